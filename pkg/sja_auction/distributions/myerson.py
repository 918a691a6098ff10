"""
Regular single-item case: the reserve-price mechanism and its dual.

When the virtual surplus g = F + x f - 1 is non-decreasing, the reserve
price x0 solves g(x0) = 0, the optimal utility is u(x) = max(0, x - x0) and
the dual z(x) = max(0, g(x)) has integral R(x0). The pair satisfies every
complementarity condition with zero slack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from ..errors import NonRegularDistributionError, RootBracketError
from ..observability import ComputationLogger
from .density import Density1D, regularity_check

logger = ComputationLogger("distributions")

_COMPLEMENTARITY_TOL = 1e-9
_OBJECTIVE_TOL = 1e-8


@dataclass
class MyersonDual:
    dist: Density1D
    reserve: float
    objective: float
    revenue: float
    residuals: Dict[str, float]

    def z(self, x) -> np.ndarray:
        return np.maximum(self.dist.virtual_surplus(x), 0.0)

    def utility(self, x) -> np.ndarray:
        return np.maximum(np.asarray(x, dtype=float) - self.reserve, 0.0)

    @property
    def passed(self) -> bool:
        return (
            all(value <= _COMPLEMENTARITY_TOL for value in self.residuals.values())
            and abs(self.objective - self.revenue) <= _OBJECTIVE_TOL
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "distribution": self.dist.name,
            "reserve": self.reserve,
            "objective": self.objective,
            "revenue": self.revenue,
            "residuals": dict(self.residuals),
            "passed": self.passed,
        }


def reserve_price(dist: Density1D) -> float:
    """Root of the virtual surplus; the lower end when the surplus is already nonnegative there."""
    lo, hi = dist.support
    g_lo = float(dist.virtual_surplus(lo))
    if g_lo >= 0.0:
        return lo
    if float(dist.virtual_surplus(hi)) < 0.0:
        raise RootBracketError("virtual_surplus", lo, hi)
    return float(brentq(lambda t: float(dist.virtual_surplus(t)), lo, hi, xtol=1e-14))


def _complementarity(dist: Density1D, reserve: float, points: int) -> Dict[str, float]:
    """
    Zero-slack conditions on a grid:
    u * (g' - z') = 0 inside, u * (z - x f) = 0 at both ends, z * (1 - u') = 0,
    plus dual feasibility z >= 0, z' <= g', z(H) >= H f(H), z(L) <= L f(L).
    """
    lo, hi = dist.support
    xs = dist.grid(points)
    g = dist.virtual_surplus(xs)
    g_prime = dist.virtual_surplus_prime(xs)
    selling = xs > reserve
    z = np.where(selling, np.maximum(g, 0.0), 0.0)
    z_prime = np.where(selling, g_prime, 0.0)
    u = np.maximum(xs - reserve, 0.0)
    u_prime = selling.astype(float)

    def boundary(x: float) -> float:
        return float(np.maximum(dist.virtual_surplus(x), 0.0)) - x * float(dist.f(x))

    u_lo, u_hi = max(lo - reserve, 0.0), max(hi - reserve, 0.0)
    return {
        "interior": float(np.max(u * np.abs(g_prime - z_prime))),
        "lower_end": abs(u_lo * boundary(lo)),
        "upper_end": abs(u_hi * boundary(hi)),
        "allocation": float(np.max(z * (1.0 - u_prime))),
        "negative_z": float(np.max(np.maximum(-z, 0.0))),
        "derivative": float(np.max(np.maximum(z_prime - g_prime, 0.0))),
        "upper_value": max(-boundary(hi), 0.0),
        "lower_value": max(boundary(lo), 0.0),
    }


def myerson_dual(dist: Density1D, grid: int = 10_000) -> MyersonDual:
    """
    Reserve price, dual z and its objective for a regular distribution.

    Raises:
        NonRegularDistributionError: the virtual surplus decreases somewhere
    """
    report = regularity_check(dist, grid=grid)
    if not report.monotone:
        logger.warning(
            "distribution is not regular", name=dist.name, intervals=len(report.intervals)
        )
        raise NonRegularDistributionError(dist.name, report.intervals)

    with logger.track_operation("myerson_dual", name=dist.name) as meta:
        reserve = reserve_price(dist)
        lo, hi = dist.support
        objective, _ = quad(
            lambda t: max(float(dist.virtual_surplus(t)), 0.0), reserve, hi, limit=200
        )
        result = MyersonDual(
            dist=dist,
            reserve=reserve,
            objective=float(objective),
            revenue=float(dist.revenue(reserve)),
            residuals=_complementarity(dist, reserve, grid),
        )
        meta["reserve"] = f"{reserve:.12g}"
        meta["passed"] = result.passed
    return result
