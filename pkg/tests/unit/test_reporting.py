"""Tests for the text report templates."""

import pytest
from jinja2 import TemplateNotFound, UndefinedError

from sja_auction.distributions import myerson_dual, nonregular_demo, uniform
from sja_auction.dual_cert import CertGrid, certify
from sja_auction.mechanism import Mechanism
from sja_auction.pricing import solve_normalized, verify_slice_conditions
from sja_auction.reporting import TEMPLATES, render_text


class TestRenderText:
    """One template per command."""

    def test_every_command_has_a_template(self):
        """Test the registered template names."""
        assert set(TEMPLATES) == {
            "prices",
            "certify",
            "revenue",
            "deficiency-scan",
            "myerson",
            "nonregular",
        }

    def test_prices(self):
        """Test one line per bundle size and the slice verdict."""
        profile = solve_normalized(2)
        document = profile.to_dict()
        document["slices"] = verify_slice_conditions(profile).to_dict()
        text = render_text("prices", document)
        assert text.startswith("SJA prices for m=2\n")
        assert "  r=1  p=0.6666666667" in text
        assert "slice conditions: PASS" in text

    def test_prices_conjectural_header(self):
        """Test the conjectural flag stays on the header line."""
        profile = solve_normalized(2)
        document = profile.to_dict()
        document["slices"] = verify_slice_conditions(profile).to_dict()
        document["conjectural"] = True
        text = render_text("prices", document)
        assert text.startswith("SJA prices for m=2 (conjectural)\n  r=1  ")

    def test_certify(self):
        """Test the verdict, values and residual lines."""
        document = certify(Mechanism.for_items(1), CertGrid(m=1, N=10)).to_dict()
        text = render_text("certify", document)
        assert text.startswith("Dual certificate m=1 N=10: PASS")
        assert "  objective  0.25" in text
        assert "  top_boundary: " in text
        assert "violated" not in text

    def test_certify_violation_line(self):
        """Test violations are listed with their cell."""
        document = certify(Mechanism.for_items(1), CertGrid(m=1, N=10)).to_dict()
        document["passed"] = False
        document["violations"] = [
            {"condition": "top_boundary", "residual": 0.5, "bound": 0.4, "cell": [9]}
        ]
        text = render_text("certify", document)
        assert "FAIL" in text
        assert "violated top_boundary at [9]: 0.5 > 0.4" in text

    def test_revenue(self):
        """Test the stderr appears only for sampled values."""
        document = {
            "m": 1,
            "revenue": {"value": 0.25, "method": "exact", "stderr": None},
            "size_classes": [{"r": 1, "price": 0.5, "volume": 0.5}],
            "baselines": [{"name": "separate_sale", "revenue": 0.25, "price": 0.5}],
        }
        text = render_text("revenue", document)
        assert text.startswith("Expected revenue m=1: 0.25 (exact)\n")
        assert "separate_sale: 0.25 at price 0.5" in text
        document["revenue"].update(method="mc", stderr=0.001)
        assert "(mc, stderr 0.001)" in render_text("revenue", document)

    def test_deficiency_scan(self):
        """Test one row per searched body."""
        document = {
            "m": 2,
            "grid": 10,
            "passed": True,
            "bodies": [
                {
                    "r": 1,
                    "mode": "exhaustive",
                    "best_deficiency": 0.0,
                    "slack_bound": 0.1,
                    "candidates": 11,
                }
            ],
        }
        text = render_text("deficiency-scan", document)
        assert "Deficiency scan m=2 grid=10: PASS" in text
        assert "r=1 exhaustive: best 0" in text

    def test_myerson(self):
        """Test the reserve-price line."""
        text = render_text("myerson", myerson_dual(uniform()).to_dict())
        assert text.startswith("Reserve price for uniform[0,1]: 0.5\n")
        assert "PASS" in text

    def test_nonregular(self):
        """Test the checks are listed with yes/no."""
        text = render_text("nonregular", nonregular_demo(points=11).to_dict())
        assert text.startswith("Non-regular example: PASS")
        assert "relaxed_exceeds_optimal: yes" in text

    def test_missing_key(self):
        """Test templates refuse incomplete documents."""
        with pytest.raises(UndefinedError):
            render_text("myerson", {"distribution": "uniform[0,1]"})

    def test_unknown_command(self):
        """Test only registered commands render."""
        with pytest.raises(TemplateNotFound):
            render_text("plot", {})
