"""
A non-regular single-item example where the convexity constraint matters.

The revenue curve R of the cubic cdf has a global maximum x0, a local
minimum x2 and a second local maximum x3; x1 in (x0, x2) has R(x1) = R(x3).
Three duals are compared:

- the ironed dual z: equal to -R' on [x0, x1] and [x3, 1], zero elsewhere,
  with integral R(x0), the optimal revenue;
- z1 = max(0, -R'), optimal once convexity is dropped, with integral
  R(x0) - R(x2) + R(x3);
- z0 = -R' + max(0, max_{y >= x} R'(y)), optimal once monotonicity is
  dropped as well.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad, trapezoid
from scipy.optimize import brentq

from ..errors import RootBracketError
from ..observability import ComputationLogger
from .density import Density1D, RegularityReport, nonregular_example, regularity_check

logger = ComputationLogger("distributions")

CURVE_COLUMNS = ("x", "R", "minus_R_prime", "z", "z0", "z1")
_SCAN_POINTS = 1001
_FEASIBILITY_TOL = 1e-9


def _stationary_points(dist: Density1D) -> List[float]:
    """Roots of R' = -g, located by sign changes on a scan grid and refined with brentq."""
    xs = dist.grid(_SCAN_POINTS)
    g = dist.virtual_surplus(xs)
    roots = []
    for a, b, ga, gb in zip(xs[:-1], xs[1:], g[:-1], g[1:]):
        if ga == 0.0:
            roots.append(float(a))
        elif ga * gb < 0.0:
            roots.append(float(brentq(lambda t: float(dist.virtual_surplus(t)), a, b, xtol=1e-15)))
    return roots


def _running_max_from_right(values: np.ndarray) -> np.ndarray:
    return np.maximum.accumulate(values[::-1])[::-1]


@dataclass
class NonRegularReport:
    regularity: RegularityReport
    x0: float
    x1: float
    x2: float
    x3: float
    optimal_value: float
    ironed_value: float
    relaxed_value: float
    relaxed_integral: float
    z_only_value: float
    ironing_integral: float
    checks: Dict[str, bool] = field(default_factory=dict)
    curve: List[Tuple[float, ...]] = field(default_factory=list, repr=False)

    @property
    def gap(self) -> float:
        return self.relaxed_value - self.optimal_value

    @property
    def passed(self) -> bool:
        return self.gap > 0.0 and all(self.checks.values())

    def curve_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CURVE_COLUMNS)
        for row in self.curve:
            writer.writerow([f"{v:.12g}" for v in row])
        return buffer.getvalue()

    def to_dict(self) -> Dict[str, object]:
        return {
            "regular": self.regularity.monotone,
            "decreasing_intervals": [list(iv) for iv in self.regularity.intervals],
            "x0": self.x0,
            "x1": self.x1,
            "x2": self.x2,
            "x3": self.x3,
            "optimal_value": self.optimal_value,
            "ironed_value": self.ironed_value,
            "relaxed_value": self.relaxed_value,
            "relaxed_integral": self.relaxed_integral,
            "z_only_value": self.z_only_value,
            "ironing_integral": self.ironing_integral,
            "gap": self.gap,
            "checks": dict(self.checks),
            "passed": self.passed,
        }


def ironed_dual(dist: Density1D, x0: float, x1: float, x3: float):
    """z equal to -R' on [x0, x1] and [x3, H], zero elsewhere."""

    def z(x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        keep = ((x >= x0) & (x <= x1)) | (x >= x3)
        return np.where(keep, dist.virtual_surplus(x), 0.0)

    return z


def relaxed_duals(dist: Density1D, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(z1, z0) sampled on the increasing grid ``xs``."""
    g = dist.virtual_surplus(xs)
    z1 = np.maximum(g, 0.0)
    z0 = g + np.maximum(_running_max_from_right(-g), 0.0)
    return z1, z0


def _feasibility(
    dist: Density1D, xs: np.ndarray, z1: np.ndarray, z0: np.ndarray
) -> Dict[str, bool]:
    """
    z1 is feasible with s = max(0, R'): z1 - s = -R' and s >= 0.
    z0 is feasible for the z-only dual: z0 >= 0, z0 - g non-increasing,
    z0(H) >= H f(H) and z0(L) <= L f(L).
    """
    lo, hi = dist.support
    g = dist.virtual_surplus(xs)
    s = np.maximum(-g, 0.0)
    top = hi * float(dist.f(hi))
    bottom = lo * float(dist.f(lo))
    tol = _FEASIBILITY_TOL
    return {
        "z1_nonnegative": bool(np.all(z1 >= -tol)),
        "z1_slack_identity": bool(np.allclose(z1 - s, g, atol=tol)),
        "z1_upper_end": bool(z1[-1] - s[-1] >= top - tol),
        "z1_lower_end": bool(z1[0] - s[0] <= bottom + tol),
        "z0_nonnegative": bool(np.all(z0 >= -tol)),
        "z0_derivative": bool(np.all(np.diff(z0 - g) <= tol)),
        "z0_upper_end": bool(z0[-1] >= top - tol),
        "z0_lower_end": bool(z0[0] <= bottom + tol),
    }


def nonregular_demo(dist: Optional[Density1D] = None, points: int = 201) -> NonRegularReport:
    """
    Compare the optimal revenue with the value of the convexity-free relaxation.

    Raises:
        RootBracketError: R' does not have exactly three roots in the support
    """
    dist = dist or nonregular_example()
    lo, hi = dist.support
    with logger.track_operation("nonregular_demo", name=dist.name) as meta:
        regularity = regularity_check(dist)
        roots = _stationary_points(dist)
        if len(roots) != 3:
            raise RootBracketError("revenue_curve_derivative", lo, hi)
        x0, x2, x3 = roots
        r3 = float(dist.revenue(x3))
        if (float(dist.revenue(x0)) - r3) * (float(dist.revenue(x2)) - r3) >= 0.0:
            raise RootBracketError("revenue_level", x0, x2)
        x1 = float(brentq(lambda t: float(dist.revenue(t)) - r3, x0, x2, xtol=1e-15))

        def g(t: float) -> float:
            return float(dist.virtual_surplus(t))

        optimal = float(dist.revenue(x0))
        relaxed = optimal - float(dist.revenue(x2)) + r3
        ironed = quad(g, x0, x1, limit=200)[0] + quad(g, x3, hi, limit=200)[0]
        relaxed_integral = quad(lambda t: max(g(t), 0.0), lo, hi, points=[x0, x2, x3], limit=200)[0]
        ironing = quad(g, x1, x3, limit=200)[0]

        fine = dist.grid(10_001)
        z1_fine, z0_fine = relaxed_duals(dist, fine)
        z_only = float(trapezoid(z0_fine, fine))
        checks = _feasibility(dist, fine, z1_fine, z0_fine)
        checks["non_regular"] = not regularity.monotone
        checks["ironed_matches_optimal"] = abs(ironed - optimal) <= 1e-8
        checks["relaxed_matches_integral"] = abs(relaxed_integral - relaxed) <= 1e-8
        checks["ironing_integral_zero"] = abs(ironing) <= 1e-8
        checks["relaxed_exceeds_optimal"] = relaxed - optimal > 1e-6

        xs = dist.grid(points)
        z = ironed_dual(dist, x0, x1, x3)(xs)
        z1, z0 = relaxed_duals(dist, xs)
        curve = [
            tuple(float(v) for v in row)
            for row in zip(xs, dist.revenue(xs), dist.virtual_surplus(xs), z, z0, z1)
        ]
        report = NonRegularReport(
            regularity=regularity,
            x0=x0,
            x1=x1,
            x2=x2,
            x3=x3,
            optimal_value=optimal,
            ironed_value=float(ironed),
            relaxed_value=relaxed,
            relaxed_integral=float(relaxed_integral),
            z_only_value=z_only,
            ironing_integral=float(ironing),
            checks=checks,
            curve=curve,
        )
        meta["gap"] = f"{report.gap:.6g}"
        meta["passed"] = report.passed
    return report
