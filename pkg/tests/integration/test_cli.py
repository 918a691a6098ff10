"""End-to-end tests of the sja command line."""

import json
import logging

import pytest

from sja_auction.cli import main

pytestmark = pytest.mark.integration


@pytest.fixture(autouse=True)
def restore_root_logger():
    """main() reconfigures the root logger; put it back afterwards."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPrices:
    """sja prices."""

    def test_json(self, capsys):
        """Test the two-item profile as JSON."""
        code, out, _ = run(capsys, "prices", "--items", "2")
        assert code == 0
        document = json.loads(out)
        assert document["m"] == 2
        assert document["passed"] is True
        assert document["mu"][1] == pytest.approx(3.414213562, abs=1e-8)
        assert document["structure"]["passed"] is True

    def test_csv(self, capsys):
        """Test one CSV row per bundle size."""
        code, out, _ = run(capsys, "prices", "--items", "3", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "r,p,solved_p,mu,lambda"
        assert len(lines) == 4
        assert lines[1].startswith("1,0.75,")

    def test_missing_items(self, capsys):
        """Test a missing required flag is a usage error."""
        code, _, err = run(capsys, "prices")
        assert code == 1
        assert "error" in err

    def test_zero_items(self, capsys):
        """Test m = 0 is rejected."""
        code, _, _ = run(capsys, "prices", "--items", "0")
        assert code == 1


class TestCertify:
    """sja certify."""

    def test_single_item(self, capsys):
        """Test m = 1, N = 10 passes."""
        code, out, _ = run(capsys, "certify", "--items", "1", "--grid", "10")
        assert code == 0
        document = json.loads(out)
        assert document["passed"] is True
        assert document["objective"] == pytest.approx(0.25)

    def test_misaligned_grid(self, capsys):
        """Test N = 100 is not a multiple of 3."""
        code, _, err = run(capsys, "certify", "--items", "2", "--grid", "100")
        assert code == 1
        assert "100" in err

    def test_coloring_csv(self, capsys, tmp_path):
        """Test the coloring is written next to the certificate."""
        target = tmp_path / "colors" / "m1.csv"
        code, _, _ = run(
            capsys, "certify", "--items", "1", "--grid", "10", "--coloring-csv", str(target)
        )
        assert code == 0
        lines = target.read_text().splitlines()
        assert lines[0] == "i1,color"
        assert len(lines) == 11

    def test_text(self, capsys):
        """Test the text report."""
        code, out, _ = run(capsys, "certify", "--items", "1", "--grid", "10", "--format", "text")
        assert code == 0
        assert out.startswith("Dual certificate m=1 N=10: PASS")


class TestRevenue:
    """sja revenue."""

    def test_single_item(self, capsys):
        """Test one item earns 1/4."""
        code, out, _ = run(capsys, "revenue", "--items", "1")
        assert code == 0
        document = json.loads(out)
        assert document["revenue"]["value"] == pytest.approx(0.25)
        assert [b["name"] for b in document["baselines"]] == ["grand_bundle", "separate_sale"]

    def test_repeated_runs_identical(self, capsys):
        """Test the same flags and seed give byte-identical output."""
        argv = ("revenue", "--items", "2", "--method", "mc", "--samples", "20000", "--seed", "3")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_sample_count_from_settings(self, capsys, monkeypatch):
        """Test --samples falls back to the configured default_samples."""
        monkeypatch.setenv("SJA_SETTINGS_JSON", json.dumps({"default_samples": 5000}))
        code, out, _ = run(capsys, "revenue", "--items", "2", "--method", "mc")
        assert code == 0
        assert json.loads(out)["revenue"]["samples"] == 5000

    def test_out_file(self, capsys, tmp_path):
        """Test --out writes the document instead of stdout."""
        target = tmp_path / "revenue.json"
        code, out, _ = run(capsys, "revenue", "--items", "2", "--out", str(target))
        assert code == 0
        assert out == ""
        document = json.loads(target.read_text())
        assert document["revenue"]["value"] == pytest.approx(0.5492, abs=1e-4)

    def test_exact_above_three_items(self, capsys):
        """Test exact revenue for m = 4 is a usage error."""
        code, _, _ = run(capsys, "revenue", "--items", "4")
        assert code == 1


class TestDeficiencyScan:
    """sja deficiency-scan."""

    def test_two_items_with_witness(self, capsys, tmp_path):
        """Test both bodies stay within slack and the witness is written."""
        witness = tmp_path / "witness.rle"
        code, out, _ = run(
            capsys, "deficiency-scan", "--items", "2", "--grid", "10", "--witness", str(witness)
        )
        assert code == 0
        document = json.loads(out)
        assert [row["r"] for row in document["bodies"]] == [1, 2]
        assert all(row["within_slack"] for row in document["bodies"])
        assert witness.read_text().startswith("# voxel-body v1\n")

    def test_both_modes(self, capsys):
        """Test --method both runs exhaustive and local."""
        code, out, _ = run(
            capsys, "deficiency-scan", "--items", "1", "--grid", "8", "--method", "both"
        )
        assert code == 0
        modes = [row["mode"] for row in json.loads(out)["bodies"]]
        assert modes == ["exhaustive", "local"]


class TestSingleItemDuals:
    """sja myerson and sja nonregular."""

    def test_myerson_uniform(self, capsys):
        """Test the reserve of uniform[0, 2]."""
        code, out, _ = run(capsys, "myerson", "--lower", "0", "--upper", "2")
        assert code == 0
        document = json.loads(out)
        assert document["reserve"] == pytest.approx(1.0)
        assert document["objective"] == pytest.approx(0.5)

    def test_myerson_text(self, capsys):
        """Test the text report."""
        code, out, _ = run(capsys, "myerson", "--format", "text")
        assert code == 0
        assert out.startswith("Reserve price for uniform[0,1]: 0.5")

    def test_myerson_nonregular(self, capsys):
        """Test a non-regular density is a verification failure."""
        code, _, err = run(capsys, "myerson", "--distribution", "nonregular")
        assert code == 2
        assert "nonregular" in err

    def test_nonregular_csv(self, capsys):
        """Test the curve CSV has one row per point."""
        code, out, _ = run(capsys, "nonregular", "--format", "csv", "--points", "11")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "x,R,minus_R_prime,z,z0,z1"
        assert len(lines) == 12
