"""
Closed-form defining polynomials for the transformed prices mu_2..mu_6.

Each polynomial has the solved mu_r as one of its real roots once the
lower-order values are substituted. They are only used to cross-check the
bisection solver, never to produce prices.

Coefficients are ascending (constant term first), matching
``numpy.polynomial.Polynomial``.
"""

from __future__ import annotations

import math
from typing import List, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from ..errors import InvalidInputError, UnsupportedOrderError

SQRT2 = math.sqrt(2.0)

_IMAG_TOL = 1e-7


def _order2() -> List[float]:
    return [2.0, -4.0, 1.0]


def _order3() -> List[float]:
    return [12.0 * SQRT2 + 15.0, 9.0, -9.0, 1.0]


def _order4(a: float) -> List[float]:
    s = SQRT2
    c0 = 72.0 * a**2 - (144.0 * s + 288.0) * a + 48.0 * s + 88.0
    return [c0, 96.0 * s + 128.0, 24.0, -16.0, 1.0]


def _order5_five_items(a: float) -> List[float]:
    # p_5 falls between p_3 and p_4 here, so the top two prices coincide
    s = SQRT2
    c2 = 800.0 * s - 34950.0
    c1 = 900.0 * a**2 - 1800.0 * s * a - 3600.0 * a - 14600.0 * s + 121175.0
    c0 = (
        720.0 * s * a**2
        - 14220.0 * a**2
        + 22680.0 * s * a
        + 49680.0 * a
        + 41080.0 * s
        - 161215.0
    )
    return [c0, c1, c2, 4350.0, -225.0, 4.0]


def _order5_many_items(a: float, b: float) -> List[float]:
    s = SQRT2
    c2 = -100.0 * a**3 + 900.0 * a**2 - 900.0 * a - 800.0 * s - 950.0
    c1 = (
        -150.0 * a**4
        + 400.0 * a**3 * b
        + 1200.0 * a**3
        - 3600.0 * a**2 * b
        - 900.0 * a**2
        + 3600.0 * a * b
        - 25.0 * b**4
        + 400.0 * b**3
        - 600.0 * b**2
        + 2400.0 * s * b
        + 2800.0 * b
        - 1600.0 * s
        - 2225.0
    )
    c0 = (
        60.0 * a**5
        - 150.0 * a**4
        - 200.0 * a**3 * b**2
        - 400.0 * a**3 * b
        - 1900.0 * a**3
        + 1800.0 * a**2 * b**2
        + 3600.0 * a**2 * b
        - 1800.0 * a * b**2
        - 3600.0 * a * b
        + 1800.0 * a
        + 20.0 * b**5
        - 275.0 * b**4
        - 1200.0 * s * b**2
        - 800.0 * b**2
        - 2400.0 * s * b
        - 2800.0 * b
        + 8960.0 * s
        + 12185.0
    )
    return [c0, c1, c2, 50.0, -25.0, 1.0]


def _order6_six_items(mu_prefix: Sequence[float]) -> List[float]:
    # 720 times the order-6 slice volume with p_5 = p_6, minus 720 * 6k, in p_6 = 6 - mu_6 k
    k = 1.0 / 7.0
    p1, p2, p3, p4 = (r + 1 - float(mu_prefix[r]) * k for r in range(4))
    q = Polynomial([6.0, -k])

    c = 3 * p4**3 - 9 * p4**2 * q + 9 * p4 * q**2 - 2 * q**3
    d = 6 * p4**3 - 18 * p4**2 * q + 18 * p4 * q**2 - 5 * q**3
    e = 10 * p4**3 - 30 * p4**2 * q + 30 * p4 * q**2 - 9 * q**3
    f = (
        4 * p3**4
        - 16 * p3**3 * q
        + 24 * p3**2 * q**2
        - 16 * p3 * c
        + 18 * p4**4
        - 48 * p4**3 * q
        + 36 * p4**2 * q**2
        - 3 * q**4
    )
    g = (
        10 * p3**4
        - 40 * p3**3 * q
        + 60 * p3**2 * q**2
        - 40 * p3 * c
        + 60 * p4**4
        - 160 * p4**3 * q
        + 120 * p4**2 * q**2
        - 11 * q**4
    )
    h = (
        20 * p3**5
        - 75 * p3**4 * q
        + 100 * p3**3 * q**2
        - 50 * p3**2 * c
        + 30 * p4**5
        - 75 * p4**4 * q
        + 50 * p4**3 * q**2
        - 2 * q**5
    )
    tail = (
        15 * p2**6
        - 72 * p2**5 * q
        + 135 * p2**4 * q**2
        - 120 * p2**3 * d
        - 45 * p2**2 * f
        + 40 * p3**6
        - 144 * p3**5 * q
        + 180 * p3**4 * q**2
        - 80 * p3**3 * c
        + 30 * p4**6
        - 72 * p4**5 * q
        + 45 * p4**4 * q**2
        - q**6
        + 144
    )
    volume_720 = (
        6 * p1**6
        - 36 * p1**5 * q
        + 90 * p1**4 * q**2
        - 120 * p1**3 * e
        - 90 * p1**2 * g
        - 36 * p1 * (
            5 * p2**5 - 25 * p2**4 * q + 50 * p2**3 * q**2 - 50 * p2**2 * d - 25 * p2 * f + 2 * h
        )
        + 5 * tail
    )
    poly = volume_720 - 720.0 * 6.0 * k
    return list(poly.coef / poly.coef[-1])


def _designated_rank(r: int, m: int) -> int:
    """0 for the largest real root, 1 for the second largest."""
    if r == m and r in (5, 6):
        return 1
    return 0


def defining_polynomial(r: int, m: int, mu_prefix: Sequence[float]) -> Polynomial:
    """
    Defining polynomial of mu_r for m items.

    Args:
        r: order, 2..6
        m: number of items, m >= r
        mu_prefix: solved (pre-normalization) mu_1..mu_{r-1}

    Returns:
        Polynomial in mu_r with ascending coefficients

    Raises:
        UnsupportedOrderError: r outside 2..6, or r = 6 with m > 6
        InvalidInputError: mu_prefix too short or m < r
    """
    if r < 2 or r > 6:
        raise UnsupportedOrderError(r, m)
    if m < r:
        raise InvalidInputError("m", m, f"must be at least the order r={r}")
    if len(mu_prefix) < r - 1:
        raise InvalidInputError("mu_prefix", list(mu_prefix), f"needs mu_1..mu_{r - 1}")

    a = float(mu_prefix[2]) if r >= 4 else 0.0
    b = float(mu_prefix[3]) if r >= 5 else 0.0

    if r == 2:
        coef = _order2()
    elif r == 3:
        coef = _order3()
    elif r == 4:
        coef = _order4(a)
    elif r == 5:
        coef = _order5_five_items(a) if m == 5 else _order5_many_items(a, b)
    elif m == 6:
        coef = _order6_six_items(mu_prefix)
    else:
        raise UnsupportedOrderError(r, m)
    return Polynomial(coef)


def real_roots(poly: Polynomial) -> np.ndarray:
    """Real roots in descending order."""
    roots = poly.roots()
    scale = np.maximum(1.0, np.abs(roots))
    real = roots[np.abs(roots.imag) <= _IMAG_TOL * scale].real
    return np.sort(real)[::-1]


def defining_root(r: int, m: int, mu_prefix: Sequence[float]) -> float:
    """The designated real root of ``defining_polynomial(r, m, mu_prefix)``."""
    poly = defining_polynomial(r, m, mu_prefix)
    roots = real_roots(poly)
    rank = _designated_rank(r, m)
    if roots.size <= rank:
        raise UnsupportedOrderError(r, m)
    return float(roots[rank])


def polynomial_residual(poly: Polynomial, mu: float) -> float:
    """
    Coefficient-scaled residual ``|P(mu)| / sum_i |c_i| |mu|^i``.

    Absolute residuals of these polynomials are dominated by cancellation
    between terms of size up to 1e9, so the scaled form is what double
    precision can certify.
    """
    powers = np.abs(mu) ** np.arange(poly.coef.size)
    scale = float(np.sum(np.abs(poly.coef) * powers))
    return abs(float(poly(mu))) / scale if scale > 0 else abs(float(poly(mu)))
