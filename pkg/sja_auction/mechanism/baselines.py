"""Reference mechanisms reported next to SJA revenue."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial, floor
from typing import Dict

from scipy.optimize import minimize_scalar

from ..errors import InvalidInputError


@dataclass
class BaselineRevenue:
    name: str
    price: float
    revenue: float

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "price": self.price, "revenue": self.revenue}


def irwin_hall_cdf(x: float, m: int) -> float:
    """P(U_1 + ... + U_m <= x) for independent uniforms on [0,1]."""
    if x <= 0.0:
        return 0.0
    if x >= m:
        return 1.0
    total = sum((-1) ** j * comb(m, j) * (x - j) ** m for j in range(floor(x) + 1))
    return min(max(total / factorial(m), 0.0), 1.0)


def grand_bundle_revenue(m: int) -> BaselineRevenue:
    """Best single price for the bundle of all m items."""
    if m < 1:
        raise InvalidInputError("m", m, "must be at least 1")
    res = minimize_scalar(
        lambda price: -price * (1.0 - irwin_hall_cdf(price, m)),
        bounds=(0.0, float(m)),
        method="bounded",
        options={"xatol": 1e-10},
    )
    price = float(res.x)
    return BaselineRevenue("grand_bundle", price, price * (1.0 - irwin_hall_cdf(price, m)))


def separate_sale_revenue(m: int) -> BaselineRevenue:
    """Each item sold alone at 1/2, earning 1/4 apiece."""
    if m < 1:
        raise InvalidInputError("m", m, "must be at least 1")
    return BaselineRevenue("separate_sale", 0.5, m / 4.0)
