"""
SJA price solver.

Prices are fixed one order at a time: p_r is the largest price at which an
r-item buyer facing p_1..p_r buys something with probability r/(m+1).
The sale probability is non-increasing in p_r, so plain bisection on [0, r]
finds it.
"""

from __future__ import annotations

from typing import List, Optional

import numpy as np

from ..config import get_settings
from ..config.constants import (
    CONJECTURE_THRESHOLD,
    DEFAULT_TOL,
    MAX_BISECTION_ITERATIONS,
)
from ..errors import InvalidInputError, NoSolutionInBracket
from ..models.prices import PriceProfile
from ..observability import ComputationLogger
from ..volumes import slice_volume

logger = ComputationLogger("pricing")


def _bisect_price(
    prefix: List[float], target: float, tol: float, max_order: int
) -> float:
    r = len(prefix) + 1
    lo, hi = 0.0, float(r)

    def excess(price: float) -> float:
        return slice_volume(prefix + [price], max_order) - target

    if excess(lo) < 0.0 or excess(hi) > 0.0:
        raise NoSolutionInBracket(r, lo, hi, target)

    for _ in range(MAX_BISECTION_ITERATIONS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if excess(mid) >= 0.0:
            lo = mid
        else:
            hi = mid
    # lo always satisfies v >= target, the larger-price side of the tie
    return lo


def _notes(m: int, solved: List[float]) -> List[str]:
    mu = [(m + 1) * (r + 1) - (m + 1) * p for r, p in enumerate(solved)]
    notes: List[str] = []
    if m >= 3:
        notes.append(
            f"mu_3={mu[2]:.6f}; four-digit tables round it to 7.0972, a truncated 7.0971 "
            "is the same value"
        )
    if m > CONJECTURE_THRESHOLD:
        notes.append(f"m={m} exceeds {CONJECTURE_THRESHOLD}: optimality is conjectural")
    return notes


def solve_prices(
    m: int, tol: float = DEFAULT_TOL, max_order: Optional[int] = None
) -> PriceProfile:
    """
    Solve the slice conditions for m items.

    Args:
        m: number of items
        tol: bisection width at which to stop
        max_order: recursion cap passed to the volume evaluator, defaults to the
            configured max_order

    Returns:
        Unnormalized PriceProfile; ``conjectural`` is set when m > 6

    Raises:
        InvalidInputError: m < 1 or tol <= 0
        RecursionDepthError: m above the recursion cap
        NoSolutionInBracket: the bracket [0, r] fails the sign test
    """
    if m < 1:
        raise InvalidInputError("m", m, "must be at least 1")
    if not tol > 0.0:
        raise InvalidInputError("tol", tol, "must be positive")
    if max_order is None:
        max_order = get_settings().max_order

    with logger.track_operation("solve_prices", m=m) as meta:
        prices: List[float] = []
        for r in range(1, m + 1):
            target = r / (m + 1)
            if r == 1:
                # v(p_1) = 1 - p_1
                price = m / (m + 1)
            else:
                price = _bisect_price(prices, target, tol, max_order)
            prices.append(price)
            logger.debug("solved price", order=r, price=f"{price:.15g}")

        if m > CONJECTURE_THRESHOLD:
            logger.warning("prices beyond the proven range are conjectural", m=m)
        meta["p_max"] = f"{prices[-1]:.12g}"
        return PriceProfile.from_prices(m, prices, tol=tol, notes=_notes(m, prices))


def normalize(profile: PriceProfile) -> PriceProfile:
    """
    Collapse every price at or above p_m down to p_m.

    A bundle of size j < m priced at p_j >= p_m is dominated by the grand
    bundle, so the buyer's utility is unchanged everywhere.
    """
    top = profile.solved_p[-1]
    prices = [
        top if (j < profile.m - 1 and p >= top) else p for j, p in enumerate(profile.solved_p)
    ]
    normalized = PriceProfile.from_prices(
        profile.m,
        prices,
        solved=profile.solved_p,
        normalized=True,
        tol=profile.tol,
        notes=profile.notes,
    )
    collapsed = [j + 1 for j, (a, b) in enumerate(zip(profile.solved_p, prices)) if a != b]
    if collapsed:
        logger.info("normalized prices", m=profile.m, collapsed=collapsed)
    if profile.m == 6:
        lam = normalized.lambdas
        normalized.notes.append(
            f"lambda_5={lam[4]:.4f}, lambda_6={lam[5]:.4f}: the value 7 belongs to lambda_6"
        )
    return normalized


def solve_normalized(m: int, tol: float = DEFAULT_TOL) -> PriceProfile:
    """``normalize(solve_prices(m, tol))``."""
    return normalize(solve_prices(m, tol))


def mu_table(max_items: int, tol: float = DEFAULT_TOL) -> List[List[float]]:
    """Normalized mu_1..mu_m for every m = 1..max_items."""
    return [solve_normalized(m, tol).mu for m in range(1, max_items + 1)]


def lambda_table(max_items: int, tol: float = DEFAULT_TOL) -> List[List[float]]:
    """Normalized lambda_1..lambda_m for every m = 1..max_items."""
    return [solve_normalized(m, tol).lambdas for m in range(1, max_items + 1)]


def utility_lattice(m: int, grid: int, max_points: int = 20_000, seed: int = 0) -> np.ndarray:
    """
    Points on which two menus are compared.

    The full ``grid``-point lattice when it fits in ``max_points``,
    otherwise a seeded uniform sample of that size plus the cube corners.
    """
    if grid ** m <= max_points:
        axis = np.linspace(0.0, 1.0, grid)
        mesh = np.meshgrid(*([axis] * m), indexing="ij")
        return np.stack([g.reshape(-1) for g in mesh], axis=1)
    rng = np.random.default_rng(seed)
    corners = np.array(np.meshgrid(*([[0.0, 1.0]] * m), indexing="ij")).reshape(m, -1).T
    return np.vstack([rng.random((max_points, m)), corners])


def normalization_preserves_utility(
    profile: PriceProfile, grid: int = 6, atol: float = 1e-12
) -> bool:
    """True when the offered menu and the solved menu give equal utility on a lattice."""
    from ..mechanism.core import menu_utilities

    points = utility_lattice(profile.m, grid)
    offered = menu_utilities(points, profile.p)
    solved = menu_utilities(points, profile.solved_p)
    return bool(np.allclose(offered, solved, rtol=0.0, atol=atol))

