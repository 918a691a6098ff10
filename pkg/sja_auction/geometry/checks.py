"""Structural checks on voxel bodies: projection inequalities, deficiency bounds, closure."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Dict, List

import numpy as np

from ..config.constants import DEFAULT_SEED
from ..errors import InvalidInputError
from .voxel import VoxelBody

_REL_TOL = 1e-9


@dataclass
class StructureReport:
    """Outcome of ``structure_checks``; chain-point bounds only bind when they apply."""

    k: float
    deficiency: float
    loomis_whitney: bool
    supermodular: bool
    supermodular_trials: int
    applicable: bool
    chain_point: bool
    width_bound: bool
    volume_bound: bool
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        bounds = self.chain_point and self.width_bound and self.volume_bound
        return self.loomis_whitney and self.supermodular and (bounds or not self.applicable)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "deficiency": self.deficiency,
            "loomis_whitney": self.loomis_whitney,
            "supermodular": self.supermodular,
            "supermodular_trials": self.supermodular_trials,
            "applicable": self.applicable,
            "chain_point": self.chain_point,
            "width_bound": self.width_bound,
            "volume_bound": self.volume_bound,
            "passed": self.passed,
            "failures": self.failures,
        }


def loomis_whitney_holds(body: VoxelBody) -> bool:
    """|A|^(d-1) <= product of the d coordinate-projection volumes."""
    if body.dim == 1:
        return True
    lhs = body.volume() ** (body.dim - 1)
    rhs = float(np.prod(body.projection_volumes()))
    return lhs <= rhs * (1.0 + _REL_TOL)


def supermodularity_holds(a: VoxelBody, b: VoxelBody, k: float) -> bool:
    """delta(A u B) + delta(A n B) >= delta(A) + delta(B)."""
    lhs = a.union(b).deficiency(k) + a.intersection(b).deficiency(k)
    rhs = a.deficiency(k) + b.deficiency(k)
    scale = max(1.0, abs(lhs), abs(rhs))
    return lhs >= rhs - _REL_TOL * scale


def random_sub_body(body: VoxelBody, rng: np.random.Generator) -> VoxelBody:
    """Random subset of the occupied cells of ``body``."""
    keep = rng.random(body.occupancy.shape) < rng.uniform(0.2, 0.9)
    return VoxelBody(body.occupancy & keep, body.cell_size)


def structure_checks(
    body: VoxelBody, k: float, trials: int = 200, seed: int = DEFAULT_SEED
) -> StructureReport:
    """
    Loomis-Whitney, supermodularity on random sub-body pairs, and the bounds
    every nonnegative-deficiency symmetric downward-closed body satisfies:
    it contains (k, 2k, ..., dk), has width at least kd and volume at least
    (kd)^d.
    """
    if k <= 0.0:
        raise InvalidInputError("k", k, "must be positive")
    dim = body.dim
    delta = body.deficiency(k)
    failures: List[str] = []

    lw = loomis_whitney_holds(body)
    if not lw:
        failures.append("loomis_whitney")

    rng = np.random.default_rng(seed)
    supermodular = True
    for _ in range(trials):
        a = random_sub_body(body, rng)
        b = random_sub_body(body, rng)
        if not supermodularity_holds(a, b, k):
            supermodular = False
            failures.append("supermodularity")
            break

    applicable = (
        delta >= -_REL_TOL * max(1.0, body.volume())
        and body.is_downward_closed()
        and body.is_symmetric()
        and not body.is_empty()
    )
    chain = np.arange(1, dim + 1, dtype=float) * k
    chain_point = body.contains_point(chain)
    width_bound = body.width() >= k * dim * (1.0 - _REL_TOL)
    volume_bound = body.volume() >= (k * dim) ** dim * (1.0 - _REL_TOL)
    if applicable:
        for name, ok in (
            ("chain_point", chain_point),
            ("width_bound", width_bound),
            ("volume_bound", volume_bound),
        ):
            if not ok:
                failures.append(name)

    return StructureReport(
        k=k,
        deficiency=delta,
        loomis_whitney=lw,
        supermodular=supermodular,
        supermodular_trials=trials,
        applicable=applicable,
        chain_point=chain_point,
        width_bound=width_bound,
        volume_bound=volume_bound,
        failures=failures,
    )


def slice_projection_commutes(
    body: VoxelBody, slice_axis: int, index: int, drop_axis: int
) -> bool:
    """
    Slicing at ``slice_axis = index`` then dropping ``drop_axis`` equals
    dropping first and slicing the same coordinate.
    """
    if slice_axis == drop_axis:
        raise InvalidInputError("drop_axis", drop_axis, "must differ from slice_axis")
    if body.dim < 3:
        raise InvalidInputError("dim", body.dim, "needs at least 3 axes")
    sliced_first = body.slice(slice_axis, index).projection(
        drop_axis - 1 if drop_axis > slice_axis else drop_axis
    )
    dropped_first = body.projection(drop_axis).slice(
        slice_axis - 1 if slice_axis > drop_axis else slice_axis, index
    )
    return bool(np.array_equal(sliced_first.occupancy, dropped_first.occupancy))


@dataclass
class PClosureReport:
    samples: int
    violations: int
    first_violation: List[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "samples": self.samples,
            "violations": self.violations,
            "first_violation": self.first_violation,
            "passed": self.passed,
        }


def p_closure_spotcheck(
    body: VoxelBody, samples: int = 1000, seed: int = DEFAULT_SEED
) -> PClosureReport:
    """
    Sample convex combinations of the permutations of occupied cell centres
    and count those landing outside the body.
    """
    report = PClosureReport(samples=samples, violations=0)
    cells = np.argwhere(body.occupancy)
    if cells.size == 0 or samples <= 0:
        return report
    rng = np.random.default_rng(seed)
    perms = np.asarray(list(permutations(range(body.dim))))
    for _ in range(samples):
        centre = (cells[rng.integers(cells.shape[0])] + 0.5) * body.cell_size
        weights = rng.dirichlet(np.ones(perms.shape[0]))
        point = weights @ centre[perms]
        if not body.contains_point(point):
            report.violations += 1
            if not report.first_violation:
                report.first_violation = [float(v) for v in point]
    return report
