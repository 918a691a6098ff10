"""
The deterministic symmetric mechanism induced by a bundle-price menu.

Prices depend only on bundle size, so the best bundle of size r is always
the r highest-valued items. The argmax over all 2^m bundles therefore
reduces to comparing m+1 prefix bundles of the descending sort.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..config.constants import TIE_TOL
from ..errors import DomainViolation, InvalidInputError
from ..models.prices import PriceProfile


def menu_utilities(points: np.ndarray, prices: Sequence[float]) -> np.ndarray:
    """
    Buyer utility ``max_J (sum_J x - p_|J|)`` for every row of ``points``.

    Args:
        points: (n, m) valuations
        prices: p_1..p_m

    Returns:
        (n,) utilities, never negative since the empty bundle is free
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    ranked = -np.sort(-points, axis=1)
    surplus = np.cumsum(ranked, axis=1) - np.asarray(prices, dtype=float)[None, :]
    return np.maximum(surplus.max(axis=1), 0.0)


@dataclass
class Allocation:
    """Outcome of one evaluation: buyer utility, bundle (0-based items) and payment."""

    utility: float
    bundle: Tuple[int, ...]
    payment: float

    def to_dict(self) -> Dict[str, object]:
        return {"utility": self.utility, "bundle": list(self.bundle), "payment": self.payment}


@dataclass
class BatchAllocation:
    """Vectorised outcomes for a block of valuations."""

    utility: np.ndarray
    size: np.ndarray
    payment: np.ndarray
    allocation: np.ndarray = field(repr=False)


@dataclass
class Mechanism:
    """
    Menu mechanism offering any r items at price p_r, with p_0 = 0.

    Items are indexed 0..m-1. Ties between bundles are resolved toward the
    smaller bundle, then toward the lexicographically smallest item set.
    """

    profile: PriceProfile

    @classmethod
    def for_items(cls, m: int) -> "Mechanism":
        """SJA mechanism on m items with normalized prices."""
        from ..pricing import solve_normalized

        return cls(solve_normalized(m))

    @property
    def m(self) -> int:
        return self.profile.m

    @property
    def prices(self) -> np.ndarray:
        return np.asarray(self.profile.p, dtype=float)

    @property
    def padded_prices(self) -> np.ndarray:
        """p_0..p_m."""
        return np.concatenate([[0.0], self.prices])

    def _check_points(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.shape[1] != self.m:
            raise InvalidInputError("x", points.shape, f"expected {self.m} coordinates")
        if np.any(points < 0.0) or np.any(points > 1.0):
            bad = points[np.any((points < 0.0) | (points > 1.0), axis=1)][0]
            raise DomainViolation(bad)
        return points

    def evaluate_many(self, points: np.ndarray, check: bool = True) -> BatchAllocation:
        """
        Evaluate a block of valuations.

        Args:
            points: (n, m) valuations in [0,1]^m
            check: validate the domain first

        Returns:
            BatchAllocation with a boolean (n, m) allocation matrix
        """
        if check:
            points = self._check_points(points)
        n = points.shape[0]
        order = np.argsort(-points, axis=1, kind="stable")
        ranked = np.take_along_axis(points, order, axis=1)
        prefix = np.concatenate([np.zeros((n, 1)), np.cumsum(ranked, axis=1)], axis=1)
        surplus = prefix - self.padded_prices[None, :]
        best = surplus.max(axis=1)
        # smallest size within TIE_TOL of the best
        size = np.argmax(surplus >= best[:, None] - TIE_TOL, axis=1)
        utility = np.maximum(surplus[np.arange(n), size], 0.0)

        allocation = np.zeros((n, self.m), dtype=bool)
        chosen = np.arange(self.m)[None, :] < size[:, None]
        np.put_along_axis(allocation, order, chosen, axis=1)
        return BatchAllocation(
            utility=utility,
            size=size,
            payment=self.padded_prices[size],
            allocation=allocation,
        )

    def evaluate(self, x: Sequence[float]) -> Allocation:
        """
        Utility, allocated bundle and payment at a single valuation.

        Raises:
            DomainViolation: a coordinate outside [0, 1]
        """
        batch = self.evaluate_many(np.asarray(x, dtype=float)[None, :])
        bundle = tuple(int(j) for j in np.flatnonzero(batch.allocation[0]))
        return Allocation(
            utility=float(batch.utility[0]),
            bundle=bundle,
            payment=float(batch.payment[0]),
        )

    def utility(self, points: np.ndarray) -> np.ndarray:
        """u(x) for each row; no domain check."""
        return menu_utilities(points, self.prices)

    def bundles(self) -> List[Tuple[int, ...]]:
        """All 2^m bundles ordered by size, then lexicographically."""
        result: List[Tuple[int, ...]] = []
        for size in range(self.m + 1):
            result.extend(combinations(range(self.m), size))
        return result
