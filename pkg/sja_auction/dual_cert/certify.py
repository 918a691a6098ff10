"""
End-to-end certification of a menu mechanism against its lattice dual.

The pipeline probes the mechanism on an N-lattice, matches covered cells to
boundary rows, colors the cells and reconstructs z. It then measures the
four approximate complementarity residuals, the weak-duality gap and the gap
bound (3m+1)*eps with eps = g*m*(m+1)/N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..config.constants import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    MAX_DEFAULT_CERTIFY_ITEMS,
    MAX_EXACT_REVENUE_ITEMS,
    SIGMA_MULTIPLIER,
    WEAK_DUALITY_TOL,
)
from ..errors import CertificationError, InvalidInputError
from ..mechanism import Mechanism, RevenueEstimate, expected_revenue
from ..observability import ComputationLogger
from .coloring import GridColoring, coloring_from_matching, dual_objective
from .graph import build_matching_graph
from .grid import CertGrid, Probes
from .matching import double_saturating_matching

logger = ComputationLogger("dual_cert")

TIE_BREAK = (
    "boundary cells take the bundle chosen by the mechanism at each probe; utility ties "
    "within 1e-9 go to the smaller bundle, then to the lexicographically smallest items"
)

CONDITIONS = ("utility_slack", "origin_boundary", "top_boundary", "allocation_slack")


@dataclass
class Residual:
    """Largest value of one complementarity condition and where it occurs."""

    condition: str
    value: float
    cell: Optional[Tuple[int, ...]] = None


@dataclass
class DualCertificate:
    """Outcome of :func:`certify`; ``violations`` is empty when every check passed."""

    grid: CertGrid
    coloring: GridColoring
    dual_objective: float
    primal_revenue: RevenueEstimate
    residuals: Dict[str, Residual]
    min_z_top: float
    matching: Dict[str, int]
    violations: List[Dict[str, Any]] = field(default_factory=list)
    tie_break: str = TIE_BREAK

    @property
    def gap(self) -> float:
        return self.dual_objective - self.primal_revenue.value

    @property
    def complementarity_eps(self) -> float:
        return self.grid.eps

    @property
    def complementarity_bound(self) -> float:
        return self.grid.gap_bound

    @property
    def feasible(self) -> bool:
        return self.coloring.is_feasible and self.min_z_top >= 1.0 - 1e-12

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.grid.m,
            "N": self.grid.N,
            "g": self.grid.g,
            "eps_prime": self.grid.eps_prime,
            "objective": self.dual_objective,
            "revenue": self.primal_revenue.value,
            "revenue_method": self.primal_revenue.method,
            "revenue_stderr": self.primal_revenue.stderr,
            "gap": self.gap,
            "eps": self.complementarity_eps,
            "bound": self.complementarity_bound,
            "feasible": self.feasible,
            "min_z_top": self.min_z_top,
            "residuals": {name: r.value for name, r in self.residuals.items()},
            "matching": dict(self.matching),
            "coloring": self.coloring.to_dict(),
            "tie_break": self.tie_break,
            "violations": list(self.violations),
            "passed": self.passed,
        }


def _argmax_cell(values: np.ndarray) -> Tuple[float, Optional[Tuple[int, ...]]]:
    if values.size == 0:
        return 0.0, None
    flat = int(np.argmax(values))
    cell = tuple(int(i) for i in np.unravel_index(flat, values.shape))
    return max(float(values.flat[flat]), 0.0), cell


def _utility_slack(probes: Probes, coloring: GridColoring) -> Residual:
    """u * (m+1 - div z): nonzero only on color-0 cells, bounded by the corner maximum."""
    m = probes.grid.m
    slack = np.where(coloring.color == 0, (m + 1) * probes.corner_utility, 0.0)
    value, cell = _argmax_cell(slack)
    return Residual("utility_slack", value, cell)


def _face_points(m: int, n: int, axis: int, level: float) -> np.ndarray:
    """Line centres on the face x_axis = level, one row per axis-``axis`` line."""
    if m == 1:
        return np.full((1, 1), level)
    centres = (np.arange(n) + 0.5) / n
    mesh = np.meshgrid(*([centres] * (m - 1)), indexing="ij")
    others = np.stack([c.ravel() for c in mesh], axis=-1)
    return np.insert(others, axis, level, axis=1)


def _face_residual(
    name: str, mech: Mechanism, coloring: GridColoring, level: float, per_line
) -> Residual:
    grid = coloring.grid
    m, n = grid.m, grid.N
    face_index = n - 1 if level > 0.0 else 0
    best = Residual(name, 0.0, None)
    for axis in range(m):
        points = _face_points(m, n, axis, level)
        value, line = _argmax_cell(mech.utility(points) * per_line(axis).ravel())
        if value > best.value and line is not None:
            rest = []
            if m > 1:
                rest = [int(i) for i in np.unravel_index(line[0], (n,) * (m - 1))]
            best = Residual(name, value, tuple(rest[:axis] + [face_index] + rest[axis:]))
    return best


def _origin_boundary(mech: Mechanism, coloring: GridColoring) -> Residual:
    """-u(0, .) * z_j(0, .) at the line centres on the lower faces."""
    return _face_residual(
        "origin_boundary", mech, coloring, 0.0, lambda axis: -coloring.z_bottom(axis)
    )


def _top_boundary(mech: Mechanism, coloring: GridColoring) -> Residual:
    """u(1, .) * (z_j(1, .) - 1) at the line centres on the top face."""
    return _face_residual(
        "top_boundary", mech, coloring, 1.0, lambda axis: coloring.z_top(axis) - 1.0
    )


def _allocation_slack(probes: Probes, coloring: GridColoring) -> Residual:
    """z_j * (1 - du/dx_j): z_j at centres of cells where some probe leaves item j out."""
    best = Residual("allocation_slack", 0.0, None)
    for axis in range(probes.grid.m):
        z = coloring.z_centre(axis)
        slack = np.where(probes.always[..., axis], 0.0, z)
        value, cell = _argmax_cell(slack)
        if value > best.value:
            best = Residual("allocation_slack", value, cell)
    return best


def certify(
    mech: Mechanism,
    grid: CertGrid,
    strict: bool = False,
    force_large: bool = False,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> DualCertificate:
    """
    Build and check a lattice dual certificate for ``mech``.

    Args:
        mech: normalized SJA mechanism on ``grid.m`` items
        grid: certification lattice
        strict: raise on the first failed check instead of recording it
        force_large: allow m above the default certification limit
        samples: Monte-Carlo draws for the revenue when m exceeds the exact limit
        seed: sampling seed

    Returns:
        DualCertificate with residuals, gap and any violations

    Raises:
        InvalidInputError: item-count mismatch, or m too large without force_large
        HallViolation: a required side cannot be saturated
        InfeasibleColoringError: the matched coloring leaves a line short
        CertificationError: a check fails and ``strict`` is set
    """
    if mech.m != grid.m:
        raise InvalidInputError("grid", grid.m, f"grid has m={grid.m}, mechanism has m={mech.m}")
    if grid.m > MAX_DEFAULT_CERTIFY_ITEMS and not force_large:
        raise InvalidInputError(
            "items",
            grid.m,
            f"certification above m={MAX_DEFAULT_CERTIFY_ITEMS} requires force_large",
        )

    with logger.track_operation("certify", m=grid.m, N=grid.N) as meta:
        graph = build_matching_graph(mech, grid)
        matching = double_saturating_matching(graph)
        coloring = coloring_from_matching(matching, grid)
        objective = dual_objective(coloring)

        method = "exact" if grid.m <= MAX_EXACT_REVENUE_ITEMS else "mc"
        revenue = expected_revenue(mech, method=method, samples=samples, seed=seed)

        residuals = {
            "utility_slack": _utility_slack(graph.probes, coloring),
            "origin_boundary": _origin_boundary(mech, coloring),
            "top_boundary": _top_boundary(mech, coloring),
            "allocation_slack": _allocation_slack(graph.probes, coloring),
        }
        certificate = DualCertificate(
            grid=grid,
            coloring=coloring,
            dual_objective=objective.value,
            primal_revenue=revenue,
            residuals=residuals,
            min_z_top=objective.min_top,
            matching=matching.to_dict(),
        )

        failures: List[CertificationError] = []
        for name in CONDITIONS:
            residual = residuals[name]
            if residual.value > grid.eps:
                failures.append(
                    CertificationError(name, residual.value, grid.eps, residual.cell)
                )
        slack = WEAK_DUALITY_TOL
        if revenue.stderr is not None:
            slack += SIGMA_MULTIPLIER * revenue.stderr
        if certificate.gap < -slack:
            failures.append(CertificationError("weak_duality", -certificate.gap, slack))
        if not failures and certificate.gap > grid.gap_bound + slack:
            failures.append(CertificationError("gap_bound", certificate.gap, grid.gap_bound))

        certificate.violations = [
            {
                "condition": f.condition,
                "residual": f.residual,
                "bound": f.bound,
                "cell": list(f.cell) if f.cell is not None else None,
            }
            for f in failures
        ]
        meta["gap"] = f"{certificate.gap:.6g}"
        meta["passed"] = certificate.passed
        for failure in failures:
            logger.warning(str(failure), m=grid.m, N=grid.N)

    if failures and strict:
        first = failures[0]
        first.certificate = certificate.to_dict()
        raise first
    return certificate
