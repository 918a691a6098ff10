"""
Command-line front end for the SJA toolkit.

Every command builds a JSON-ready document, renders it as JSON, CSV or
text, and maps the outcome to an exit code: 0 pass, 1 usage error,
2 verification failure, 3 internal error. Logs go to stderr so stdout and
output files depend only on the command, its flags and the seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .config import get_settings, reset_settings
from .config.constants import DEFAULT_SEED, DEFAULT_TOL, MAX_EXHAUSTIVE_CANDIDATES
from .distributions import get_distribution, myerson_dual, nonregular_demo, uniform
from .dual_cert import CertGrid, certify, coloring_csv, validate_certificate
from .errors import InvalidInputError, SJAError
from .geometry import SimBody, deficiency_search, encode_rle, voxelize
from .geometry.search import exhaustive_candidate_count
from .mechanism import (
    Mechanism,
    expected_revenue,
    grand_bundle_revenue,
    separate_sale_revenue,
    size_class_table,
)
from .pricing import check_price_structure, normalize, solve_prices, verify_slice_conditions
from .reporting import render_text

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")


class RunConfig(BaseModel):
    """Validated flags of one command invocation."""

    model_config = ConfigDict(frozen=True, extra="ignore")

    command: str
    items: int = Field(default=1, ge=1, description="Number of items m")
    grid: Optional[int] = Field(default=None, ge=1, description="Cells per axis")
    samples: int = Field(default=0, ge=0, description="Monte-Carlo draws")
    seed: int = Field(default=DEFAULT_SEED, ge=0)
    tol: float = Field(default=DEFAULT_TOL, gt=0)
    format: str = Field(default="json", pattern="^(json|csv|text)$")
    out: Optional[Path] = None
    method: Optional[str] = None
    force_large: bool = False
    coloring_csv: Optional[Path] = None
    witness: Optional[Path] = None
    distribution: str = "uniform"
    lower: float = 0.0
    upper: float = 1.0
    points: int = Field(default=201, ge=2)


@dataclass
class CommandResult:
    document: Dict[str, Any]
    passed: bool
    csv_text: Optional[str] = None


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _fmt(value: float) -> str:
    return f"{value:.15g}"


def cmd_prices(config: RunConfig) -> CommandResult:
    """Solve, normalize and verify the prices for m items."""
    profile = normalize(solve_prices(config.items, tol=config.tol))
    slices = verify_slice_conditions(profile, samples=config.samples, seed=config.seed)
    structure = check_price_structure(profile)
    document = profile.to_dict()
    document.update(
        slices=slices.to_dict(),
        structure=structure.to_dict(),
        passed=slices.passed,
    )
    rows = [
        [r, _fmt(p), _fmt(s), _fmt(mu), _fmt(lam)]
        for r, (p, s, mu, lam) in enumerate(
            zip(profile.p, profile.solved_p, profile.mu, profile.lambdas), start=1
        )
    ]
    return CommandResult(
        document, slices.passed, _csv_text(["r", "p", "solved_p", "mu", "lambda"], rows)
    )


def cmd_certify(config: RunConfig) -> CommandResult:
    """Build and check the lattice dual certificate."""
    if config.grid is None:
        raise InvalidInputError("grid", None, "certify needs --grid")
    grid = CertGrid(m=config.items, N=config.grid)
    mech = Mechanism.for_items(config.items)
    certificate = certify(
        mech,
        grid,
        force_large=config.force_large,
        samples=config.samples or get_settings().default_samples,
        seed=config.seed,
    )
    document = validate_certificate(certificate.to_dict())
    colors = coloring_csv(certificate.coloring)
    if config.coloring_csv is not None:
        _write(config.coloring_csv, colors)
    return CommandResult(document, certificate.passed, colors)


def cmd_revenue(config: RunConfig) -> CommandResult:
    """Expected revenue with per-size regions and the two simple baselines."""
    method = config.method or "exact"
    mech = Mechanism.for_items(config.items)
    revenue = expected_revenue(
        mech,
        method=method,
        samples=config.samples or get_settings().default_samples,
        seed=config.seed,
    )
    table = size_class_table(mech)
    size_classes = [
        {"r": r, "bundles": row["bundles"], "price": row["price"], "volume": row["volume_each"]}
        for r, row in sorted(table.items())
    ]
    baselines = [grand_bundle_revenue(config.items), separate_sale_revenue(config.items)]
    document = {
        "m": config.items,
        "revenue": revenue.to_dict(),
        "size_classes": size_classes,
        "baselines": [b.to_dict() for b in baselines],
    }
    rows = [
        [row["r"], row["bundles"], _fmt(row["price"]), _fmt(row["volume"])]
        for row in size_classes
    ]
    return CommandResult(document, True, _csv_text(["r", "bundles", "price", "volume"], rows))


def _scan_modes(method: str, dim: int, grid: int) -> List[str]:
    if method == "both":
        return ["exhaustive", "local"]
    if method != "auto":
        return [method]
    needed = exhaustive_candidate_count(dim, grid)
    if needed is not None and needed <= MAX_EXHAUSTIVE_CANDIDATES:
        return ["exhaustive"]
    return ["local"]


def cmd_deficiency_scan(config: RunConfig) -> CommandResult:
    """Largest deficiency of sub-bodies of the voxelized SIM bodies of the menu."""
    method = config.method or "auto"
    grid = config.grid or 20
    profile = normalize(solve_prices(config.items, tol=config.tol))
    bodies: List[Dict[str, Any]] = []
    best_witness = None
    best_value = -np.inf
    for r in range(1, min(config.items, 3) + 1):
        container = voxelize(SimBody(alphas=list(profile.lambdas[:r])), grid)
        for mode in _scan_modes(method, r, grid):
            result = deficiency_search(container, k=1.0, mode=mode)
            row = {"r": r, **result.to_dict()}
            row["within_slack"] = (
                result.witness is None or result.best_deficiency <= result.slack_bound
            )
            bodies.append(row)
            if result.witness is not None and result.best_deficiency > best_value:
                best_value = result.best_deficiency
                best_witness = result.witness
    if config.witness is not None and best_witness is not None:
        _write(config.witness, encode_rle(best_witness))
    passed = all(row["within_slack"] for row in bodies)
    document = {"m": config.items, "grid": grid, "bodies": bodies, "passed": passed}
    rows = [
        [
            row["r"],
            row["mode"],
            "" if row["best_deficiency"] is None else _fmt(row["best_deficiency"]),
            _fmt(row["slack_bound"]),
            row["candidates"],
        ]
        for row in bodies
    ]
    header = ["r", "mode", "best_deficiency", "slack_bound", "candidates"]
    return CommandResult(document, passed, _csv_text(header, rows))


def cmd_myerson(config: RunConfig) -> CommandResult:
    """Reserve price and zero-slack dual of a regular single-item distribution."""
    if config.distribution == "uniform":
        dist = uniform(config.lower, config.upper)
    else:
        dist = get_distribution(config.distribution)
    dual = myerson_dual(dist)
    xs = dist.grid(config.points)
    rows = [
        [_fmt(x), _fmt(r), _fmt(z), _fmt(u)]
        for x, r, z, u in zip(xs, dist.revenue(xs), dual.z(xs), dual.utility(xs))
    ]
    return CommandResult(dual.to_dict(), dual.passed, _csv_text(["x", "R", "z", "u"], rows))


def cmd_nonregular(config: RunConfig) -> CommandResult:
    """Optimal versus relaxed dual value for the non-regular example."""
    report = nonregular_demo(points=config.points)
    return CommandResult(report.to_dict(), report.passed, report.curve_csv())


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "prices": cmd_prices,
    "certify": cmd_certify,
    "revenue": cmd_revenue,
    "deficiency-scan": cmd_deficiency_scan,
    "myerson": cmd_myerson,
    "nonregular": cmd_nonregular,
}


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as InvalidInputError."""

    def error(self, message: str):
        raise InvalidInputError("argv", self.prog, message, message=f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Sampling seed")
    common.add_argument("--format", choices=FORMATS, default="json", help="Output format")
    common.add_argument("--out", type=Path, help="Write output to this file")
    common.add_argument("--log-level", help="Override SJA_LOG_LEVEL")

    parser = _Parser(prog="sja", description="Straight-Jacket Auction toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    prices = sub.add_parser("prices", parents=[common], help="Solve and verify SJA prices")
    prices.add_argument("--items", type=int, required=True)
    prices.add_argument("--tol", type=float, default=DEFAULT_TOL)
    prices.add_argument("--samples", type=int, default=0, help="MC draws per slice check")

    cert = sub.add_parser("certify", parents=[common], help="Lattice dual certificate")
    cert.add_argument("--items", type=int, required=True)
    cert.add_argument("--grid", type=int, required=True, help="N, a multiple of m+1")
    cert.add_argument(
        "--samples", type=int, default=0, help="MC draws for m > 3 revenue (default: settings)"
    )
    cert.add_argument("--force-large", action="store_true", help="Allow m >= 4")
    cert.add_argument("--coloring-csv", type=Path, help="Also write the coloring CSV")

    rev = sub.add_parser("revenue", parents=[common], help="Expected revenue")
    rev.add_argument("--items", type=int, required=True)
    rev.add_argument("--method", choices=("exact", "mc"), default="exact")
    rev.add_argument("--samples", type=int, default=0, help="MC draws (default: settings)")

    scan = sub.add_parser("deficiency-scan", parents=[common], help="Deficiency search")
    scan.add_argument("--items", type=int, required=True)
    scan.add_argument("--grid", type=int, default=20)
    scan.add_argument("--tol", type=float, default=DEFAULT_TOL)
    scan.add_argument("--method", choices=("auto", "exhaustive", "local", "both"), default="auto")
    scan.add_argument("--witness", type=Path, help="Write the best witness as RLE")

    mye = sub.add_parser("myerson", parents=[common], help="Regular single-item dual")
    mye.add_argument("--distribution", choices=("uniform", "nonregular"), default="uniform")
    mye.add_argument("--lower", type=float, default=0.0)
    mye.add_argument("--upper", type=float, default=1.0)
    mye.add_argument("--points", type=int, default=101, help="Rows in the CSV curve")

    nonreg = sub.add_parser("nonregular", parents=[common], help="Non-regular example")
    nonreg.add_argument("--points", type=int, default=201, help="Rows in the CSV curve")
    return parser


def _configure_logging(level: Optional[str]):
    settings = get_settings()
    name = (level or settings.log_level).upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, name, logging.WARNING),
        format="%(levelname)s %(name)s %(message)s",
        force=True,
    )


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(text)


def _render(config: RunConfig, result: CommandResult) -> str:
    if config.format == "json":
        return json.dumps(result.document, indent=2, sort_keys=True) + "\n"
    if config.format == "csv":
        return result.csv_text or ""
    return render_text(config.command, result.document)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InvalidInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        return int(e.code or 0)

    reset_settings()
    _configure_logging(args.log_level)
    try:
        config = RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    try:
        result = COMMANDS[config.command](config)
        text = _render(config, result)
    except SJAError as e:
        logger.error(f"{config.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception:
        logger.exception(f"{config.command} raised an internal error")
        return 3

    if config.out is not None:
        _write(config.out, text)
    else:
        sys.stdout.write(text)
    return 0 if result.passed else 2


if __name__ == "__main__":
    sys.exit(main())
