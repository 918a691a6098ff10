"""
Single-item value distributions on a bounded interval.

A distribution is given by its cdf F and pdf f. The revenue curve of a
posted price x is R(x) = x(1 - F(x)), and everything the duality demos need
follows from the virtual surplus g(x) = F(x) + x f(x) - 1 = -R'(x) and its
derivative g'(x) = 2 f(x) + x f'(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from ..config.constants import DENSITY_DIFF_STEP
from ..errors import DomainViolation, InvalidInputError

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass
class Density1D:
    """
    A density on [lower, upper] with a finite upper end.

    ``pdf_prime`` is optional; without it f' is taken by central differences
    with step DENSITY_DIFF_STEP.
    """

    name: str
    cdf: ArrayFn
    pdf: ArrayFn
    lower: float
    upper: float
    pdf_prime: Optional[ArrayFn] = field(default=None, repr=False)

    def __post_init__(self):
        if not np.isfinite(self.upper) or not np.isfinite(self.lower):
            raise InvalidInputError("support", (self.lower, self.upper), "support must be bounded")
        if self.upper <= self.lower:
            raise InvalidInputError("support", (self.lower, self.upper), "upper must exceed lower")

    @property
    def support(self) -> Tuple[float, float]:
        return self.lower, self.upper

    def _check(self, x) -> np.ndarray:
        values = np.asarray(x, dtype=float)
        outside = (values < self.lower) | (values > self.upper)
        if np.any(outside):
            raise DomainViolation(np.atleast_1d(values[outside])[:1], self.lower, self.upper)
        return values

    def f(self, x) -> np.ndarray:
        return np.asarray(self.pdf(self._check(x)), dtype=float)

    def F(self, x) -> np.ndarray:
        return np.asarray(self.cdf(self._check(x)), dtype=float)

    def f_prime(self, x) -> np.ndarray:
        x = self._check(x)
        if self.pdf_prime is not None:
            return np.asarray(self.pdf_prime(x), dtype=float)
        h = DENSITY_DIFF_STEP
        hi = np.minimum(x + h, self.upper)
        lo = np.maximum(x - h, self.lower)
        return (np.asarray(self.pdf(hi)) - np.asarray(self.pdf(lo))) / (hi - lo)

    def revenue(self, x) -> np.ndarray:
        """R(x) = x (1 - F(x))."""
        x = self._check(x)
        return x * (1.0 - self.F(x))

    def virtual_surplus(self, x) -> np.ndarray:
        """F(x) + x f(x) - 1, which equals -R'(x)."""
        x = self._check(x)
        return self.F(x) + x * self.f(x) - 1.0

    def virtual_surplus_prime(self, x) -> np.ndarray:
        x = self._check(x)
        return 2.0 * self.f(x) + x * self.f_prime(x)

    def grid(self, points: int) -> np.ndarray:
        return np.linspace(self.lower, self.upper, points)

    def total_mass(self) -> float:
        """Integral of f over the support."""
        value, _ = quad(lambda t: float(self.pdf(np.asarray(t))), self.lower, self.upper, limit=200)
        return float(value)


def uniform(a: float = 0.0, b: float = 1.0) -> Density1D:
    """Uniform density on [a, b]."""
    if b <= a:
        raise InvalidInputError("b", b, "upper end must exceed lower end")
    width = b - a
    return Density1D(
        name=f"uniform[{a:g},{b:g}]",
        cdf=lambda x: (np.asarray(x, dtype=float) - a) / width,
        pdf=lambda x: np.full_like(np.asarray(x, dtype=float), 1.0 / width),
        lower=a,
        upper=b,
        pdf_prime=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
    )


# F(x) = 1 - (1 - x)(1 + x(2.7x - 2.9)) expanded
_NONREGULAR_CDF = np.polynomial.Polynomial([0.0, 3.9, -5.6, 2.7])


def nonregular_example() -> Density1D:
    """Cubic cdf on [0, 1] whose revenue curve has two local maxima."""
    pdf = _NONREGULAR_CDF.deriv()
    pdf_prime = pdf.deriv()
    return Density1D(
        name="nonregular",
        cdf=_NONREGULAR_CDF,
        pdf=pdf,
        lower=0.0,
        upper=1.0,
        pdf_prime=pdf_prime,
    )


def from_functions(
    name: str, cdf: ArrayFn, pdf: ArrayFn, lower: float, upper: float
) -> Density1D:
    """User density; f' falls back to central differences."""
    return Density1D(name=name, cdf=cdf, pdf=pdf, lower=lower, upper=upper)


DISTRIBUTIONS: Dict[str, Callable[[], Density1D]] = {
    "uniform": uniform,
    "nonregular": nonregular_example,
}


def get_distribution(name: str) -> Density1D:
    """Registered distribution by name."""
    try:
        return DISTRIBUTIONS[name]()
    except KeyError:
        raise InvalidInputError(
            "distribution", name, f"must be one of {sorted(DISTRIBUTIONS)}"
        ) from None


def revenue_curve(dist: Density1D, x: float) -> float:
    """
    R(x) = x (1 - F(x)).

    Raises:
        DomainViolation: x outside the support
    """
    return float(dist.revenue(x))


@dataclass
class RegularityReport:
    """Whether F + x f - 1 is non-decreasing on the grid, with the intervals where it is not."""

    name: str
    grid: int
    monotone: bool
    intervals: List[Tuple[float, float]]

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "grid": self.grid,
            "monotone": self.monotone,
            "intervals": [list(iv) for iv in self.intervals],
        }


def regularity_check(dist: Density1D, grid: int = 1000, tol: float = 1e-12) -> RegularityReport:
    """
    Scan the virtual surplus on ``grid`` equally spaced points.

    A grid step where the surplus drops by more than ``tol`` is a violation;
    adjacent violating steps are merged into one interval.
    """
    if grid < 2:
        raise InvalidInputError("grid", grid, "need at least 2 points")
    xs = dist.grid(grid)
    drops = np.diff(dist.virtual_surplus(xs)) < -tol
    intervals: List[Tuple[float, float]] = []
    start: Optional[int] = None
    for i, bad in enumerate(drops):
        if bad and start is None:
            start = i
        if not bad and start is not None:
            intervals.append((float(xs[start]), float(xs[i])))
            start = None
    if start is not None:
        intervals.append((float(xs[start]), float(xs[-1])))
    return RegularityReport(dist.name, grid, not intervals, intervals)
