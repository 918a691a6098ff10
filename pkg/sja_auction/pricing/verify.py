"""Checks run against a solved price profile."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..config.constants import (
    CONJECTURE_THRESHOLD,
    POLYNOMIAL_RESIDUAL_TOL,
    ROOT_AGREEMENT_TOL,
    SIGMA_MULTIPLIER,
    SLICE_EXACT_TOL,
)
from ..errors import UnsupportedOrderError
from ..models.prices import PriceProfile
from ..observability import ComputationLogger
from ..volumes import (
    defining_polynomial,
    defining_root,
    mc_sale_probability,
    polynomial_residual,
    slice_volume,
)

logger = ComputationLogger("pricing")

_STRUCTURE_TOL = 1e-9


@dataclass
class SliceResidual:
    """Exact and sampled sale probability for one order r."""

    r: int
    target: float
    exact: float
    residual: float
    mc_estimate: Optional[float] = None
    mc_stderr: Optional[float] = None
    mc_ok: bool = True

    @property
    def passed(self) -> bool:
        return self.residual < SLICE_EXACT_TOL and self.mc_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "target": self.target,
            "exact": self.exact,
            "residual": self.residual,
            "mc_estimate": self.mc_estimate,
            "mc_stderr": self.mc_stderr,
            "mc_ok": self.mc_ok,
            "passed": self.passed,
        }


@dataclass
class SliceReport:
    """Slice-condition residuals for every order of a profile."""

    m: int
    samples: int
    seed: int
    entries: List[SliceResidual] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    @property
    def max_residual(self) -> float:
        return max((entry.residual for entry in self.entries), default=0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "entries": [entry.to_dict() for entry in self.entries],
        }


def verify_slice_conditions(profile: PriceProfile, samples: int = 0, seed: int = 0) -> SliceReport:
    """
    Recompute v(p_1..p_r) for every r and compare it with r/(m+1).

    The conditions are stated on the solved prices. Normalization only
    lowers prices of dominated bundles, so a normalized profile is checked
    through its ``solved_p``.

    Args:
        profile: solved (optionally normalized) profile
        samples: Monte-Carlo draws per order; 0 skips the sampled check
        seed: root seed for the sampled check

    Returns:
        SliceReport; passes when every exact residual is below 1e-9 and every
        sampled estimate lies within 4 standard errors of the target
    """
    prices = profile.solved_p
    report = SliceReport(m=profile.m, samples=samples, seed=seed)
    with logger.track_operation("verify_slice_conditions", m=profile.m, samples=samples) as meta:
        for r in range(1, profile.m + 1):
            target = r / (profile.m + 1)
            exact = slice_volume(prices[:r])
            entry = SliceResidual(r=r, target=target, exact=exact, residual=abs(exact - target))
            if samples > 0:
                estimate = mc_sale_probability(prices[:r], samples=samples, seed=seed + r)
                entry.mc_estimate = estimate.estimate
                entry.mc_stderr = estimate.stderr
                entry.mc_ok = estimate.within(target, SIGMA_MULTIPLIER)
            if not entry.passed:
                logger.warning("slice condition violated", r=r, residual=f"{entry.residual:.3g}")
            report.entries.append(entry)
        meta["passed"] = report.passed
    return report


@dataclass
class StructureCheck:
    name: str
    passed: bool
    worst: float

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "worst": self.worst}


@dataclass
class PriceStructureReport:
    """Shape properties of a normalized profile."""

    m: int
    checks: List[StructureCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _check(name: str, violations: List[float]) -> StructureCheck:
    worst = max(violations, default=0.0)
    return StructureCheck(name=name, passed=worst <= _STRUCTURE_TOL, worst=max(worst, 0.0))


def check_price_structure(profile: PriceProfile) -> PriceStructureReport:
    """
    Report the structural invariants of a profile.

    ``first_price`` and ``solved_ratio`` are read on the solved prices;
    monotonicity, concavity and the lambda bounds on the offered ones.
    """
    m = profile.m
    solved = profile.solved_p
    offered = profile.p
    diffs = profile.differences()
    lam = profile.lambdas

    checks = [
        _check("first_price", [abs(solved[0] - m / (m + 1))]),
        _check(
            "solved_ratio",
            [(r - 1) * solved[r - 1] - r * solved[r - 2] for r in range(2, m + 1)],
        ),
        _check("monotone", [offered[i - 1] - offered[i] for i in range(1, m)]),
        _check("non_increasing_differences", [diffs[i] - diffs[i - 1] for i in range(1, m)]),
        _check("lambda_non_decreasing", [lam[i - 1] - lam[i] for i in range(1, m)]),
        _check("lambda_upper_bound", [value - (m + 1) for value in lam]),
    ]
    return PriceStructureReport(m=m, checks=checks)


@dataclass
class RootAgreement:
    """Bisection mu_r against the designated root of its defining polynomial."""

    r: int
    solved_mu: float
    root: float
    residual: float

    @property
    def difference(self) -> float:
        return abs(self.solved_mu - self.root)

    @property
    def passed(self) -> bool:
        return self.difference <= ROOT_AGREEMENT_TOL and self.residual <= POLYNOMIAL_RESIDUAL_TOL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "solved_mu": self.solved_mu,
            "root": self.root,
            "difference": self.difference,
            "residual": self.residual,
            "passed": self.passed,
        }


def polynomial_crosscheck(profile: PriceProfile) -> List[RootAgreement]:
    """
    Compare solved mu_2..mu_min(m,6) with the defining-polynomial roots.

    Orders without a polynomial for this m (r = 6 with m > 6) are skipped.
    """
    mu = profile.solved_mu
    results: List[RootAgreement] = []
    for r in range(2, min(profile.m, CONJECTURE_THRESHOLD) + 1):
        try:
            poly = defining_polynomial(r, profile.m, mu[: r - 1])
            root = defining_root(r, profile.m, mu[: r - 1])
        except UnsupportedOrderError:
            logger.debug("no defining polynomial", r=r, m=profile.m)
            continue
        results.append(
            RootAgreement(
                r=r,
                solved_mu=mu[r - 1],
                root=root,
                residual=polynomial_residual(poly, mu[r - 1]),
            )
        )
    return results
