"""
Exact sell-at-least-one volumes.

For a bundle-price sequence p_1..p_r the no-sale region is
``{x in [0,1]^r : sum of the s largest coordinates < p_s for every s}``
and ``v(p)`` is the volume of its complement in the unit cube.

Sequences with weakly decreasing differences and p_1 <= 1 are evaluated by
slicing along the last coordinate: every slice is again a no-sale region of
one dimension less, with an affine price sequence, and the integrand is a
polynomial of degree r-1 on each piece. Gauss-Legendre quadrature with
ceil(r/2) nodes per piece is therefore exact up to rounding. Any other
sequence is evaluated exactly as the volume of the sorted no-sale chamber.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection, QhullError

from ..config import get_settings
from ..errors import InvalidInputError, RecursionDepthError

# Rows per recursive call before the batch is split.
_BATCH_LIMIT = 1 << 17
_NICE_TOL = 1e-12
_CHEBYSHEV_MIN_RADIUS = 1e-10


@lru_cache(maxsize=None)
def _nodes(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(max(1, math.ceil(order / 2)))
    return nodes, weights


def validate_prices(prices: Sequence[float], max_order: Optional[int] = None) -> np.ndarray:
    """
    Check a price sequence and return it as a float array.

    Raises:
        InvalidInputError: empty sequence or a price outside [0, r]
        RecursionDepthError: r above the hard cap
    """
    values = np.asarray(prices, dtype=float).reshape(-1)
    r = values.size
    if r < 1:
        raise InvalidInputError("prices", list(values), "at least one price is required")
    if max_order is None:
        max_order = get_settings().max_order
    if r > max_order:
        raise RecursionDepthError(r, max_order)
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("prices", values.tolist(), "prices must be finite")
    if np.any(values < 0.0) or np.any(values > r):
        raise InvalidInputError("prices", values.tolist(), f"prices must lie in [0, {r}]")
    return values


def duplicate_normalize(prices: Sequence[float]) -> np.ndarray:
    """
    Apply the duplication rule from the top down.

    Whenever p_s < p_{s-1} the constraint at s-1 is implied by the one at s,
    so p_{s-1} may be lowered to p_s without changing the region.
    """
    q = np.array(prices, dtype=float)
    for s in range(q.size - 1, 0, -1):
        if q[s] < q[s - 1]:
            q[s - 1] = q[s]
    return q


def is_nice(prices: Sequence[float]) -> bool:
    """True when 0 <= p_1 <= 1 and the differences are weakly decreasing."""
    q = np.asarray(prices, dtype=float)
    if q[0] < 0.0 or q[0] > 1.0 + _NICE_TOL:
        return False
    d = np.diff(q, prepend=0.0)
    return bool(np.all(d >= -_NICE_TOL) and np.all(np.diff(d) <= _NICE_TOL))


def _nice_volume(rows: np.ndarray) -> np.ndarray:
    """Sale volume for a batch of nice sequences, shape (n, r)."""
    n, r = rows.shape
    if r == 1:
        return 1.0 - rows[:, 0]
    if n > _BATCH_LIMIT:
        return np.concatenate(
            [_nice_volume(rows[i : i + _BATCH_LIMIT]) for i in range(0, n, _BATCH_LIMIT)]
        )

    d = np.diff(rows, axis=1, prepend=0.0)
    # t >= p_1 always sells
    total = 1.0 - rows[:, 0]
    # t in [0, d_r]: the slice keeps the first r-1 prices
    total = total + d[:, r - 1] * _nice_volume(rows[:, : r - 1])

    nodes, weights = _nodes(r)
    q = nodes.size
    for j in range(1, r):
        lo = d[:, j]
        hi = d[:, j - 1]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        t = mid[:, None] + half[:, None] * nodes[None, :]

        head = np.broadcast_to(rows[:, None, : j - 1], (n, q, j - 1))
        tail = rows[:, None, j:] - t[:, :, None]
        inner = np.concatenate([head, tail], axis=2).reshape(n * q, r - 1)
        values = _nice_volume(inner).reshape(n, q)
        total = total + half * (values @ weights)
    return total


def _chamber_no_sale_volume(q: np.ndarray) -> float:
    """
    Exact no-sale volume for an arbitrary non-decreasing sequence.

    The region is symmetric, so it is r! times the chamber
    1 >= y_1 >= ... >= y_r >= 0 cut by the prefix-sum constraints.
    """
    r = q.size
    if r == 1:
        return float(np.clip(q[0], 0.0, 1.0))

    rows = []
    offsets = []
    top = np.zeros(r)
    top[0] = 1.0
    rows.append(top)
    offsets.append(-1.0)
    for i in range(r - 1):
        row = np.zeros(r)
        row[i + 1] = 1.0
        row[i] = -1.0
        rows.append(row)
        offsets.append(0.0)
    bottom = np.zeros(r)
    bottom[r - 1] = -1.0
    rows.append(bottom)
    offsets.append(0.0)
    for s in range(1, r + 1):
        row = np.zeros(r)
        row[:s] = 1.0
        rows.append(row)
        offsets.append(-float(q[s - 1]))

    A = np.vstack(rows)
    b = np.asarray(offsets)

    # Chebyshev centre: maximise radius rho with A x + rho*|A_i| <= -b
    norms = np.linalg.norm(A, axis=1)
    c = np.zeros(r + 1)
    c[-1] = -1.0
    res = linprog(
        c,
        A_ub=np.hstack([A, norms[:, None]]),
        b_ub=-b,
        bounds=[(None, None)] * r + [(0.0, None)],
        method="highs",
    )
    if not res.success or res.x[-1] < _CHEBYSHEV_MIN_RADIUS:
        return 0.0

    halfspaces = np.hstack([A, b[:, None]])
    interior = res.x[:r]
    try:
        hs = HalfspaceIntersection(halfspaces, interior)
        hull = ConvexHull(hs.intersections)
    except QhullError:
        hs = HalfspaceIntersection(halfspaces, interior, qhull_options="QJ")
        hull = ConvexHull(hs.intersections, qhull_options="QJ")
    return float(math.factorial(r) * hull.volume)


def _volume_normalized(q: np.ndarray) -> float:
    if is_nice(q):
        value = float(_nice_volume(q[None, :])[0])
    else:
        value = 1.0 - _chamber_no_sale_volume(q)
    return float(np.clip(value, 0.0, 1.0))


def slice_volume(prices: Sequence[float], max_order: Optional[int] = None) -> float:
    """
    Volume of the sell-at-least-one region for bundle prices p_1..p_r.

    Args:
        prices: bundle prices, p_s charged for any s items
        max_order: hard cap on r, defaults to the configured max_order

    Returns:
        Probability that at least one item sells under uniform values on [0,1]^r

    Raises:
        InvalidInputError: prices outside [0, r]
        RecursionDepthError: r above the hard cap
    """
    values = validate_prices(prices, max_order)
    return _volume_normalized(duplicate_normalize(values))


def no_sale_volume(prices: Sequence[float], max_order: Optional[int] = None) -> float:
    """Volume of the region where nothing sells, ``1 - slice_volume``."""
    return 1.0 - slice_volume(prices, max_order)


def nice_volumes(rows: np.ndarray) -> np.ndarray:
    """Vectorised ``slice_volume`` for a batch of already-nice sequences."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    return np.clip(_nice_volume(rows), 0.0, 1.0)
