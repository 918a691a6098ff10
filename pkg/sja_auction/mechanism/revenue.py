"""
Allocation regions and expected revenue of a menu mechanism.

For a bundle J of size r the region where J is bought factors into the
part inside J, a copy of the SIM body k * Lambda(lambda_1..lambda_r), and
the part outside J, where no further items are worth adding at the
incremental prices p_{r+s} - p_r. The second factor is a no-sale volume.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..config.constants import DEFAULT_SEED, MAX_EXACT_REVENUE_ITEMS
from ..errors import InvalidInputError
from ..geometry.sim import SimBody
from ..observability import ComputationLogger
from ..volumes import estimate_mean, no_sale_volume
from .core import Mechanism

logger = ComputationLogger("mechanism")

_METHODS = ("exact", "mc")


@dataclass
class RevenueEstimate:
    """Expected payment; ``stderr`` is None for exact values."""

    value: float
    method: str
    stderr: Optional[float] = None
    samples: Optional[int] = None
    seed: Optional[int] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "value": self.value,
            "method": self.method,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
        }


def _check_method(method: str):
    if method not in _METHODS:
        raise InvalidInputError("method", method, f"must be one of {list(_METHODS)}")


def _normalize_bundle(mech: Mechanism, bundle: Iterable[int]) -> Tuple[int, ...]:
    items = tuple(sorted(set(int(j) for j in bundle)))
    if any(j < 0 or j >= mech.m for j in items):
        raise InvalidInputError("bundle", items, f"items must lie in 0..{mech.m - 1}")
    return items


def require_sja_shape(mech: Mechanism):
    """Exact region volumes assume the lambdas of a normalized SJA menu."""
    lam = mech.profile.lambdas
    if any(value <= 0.0 for value in lam) or any(b < a for a, b in zip(lam, lam[1:])):
        raise InvalidInputError(
            "method", "exact", "exact volumes need positive non-decreasing lambdas; use mc"
        )


def size_class_volume(mech: Mechanism, r: int) -> float:
    """
    Exact |U_J| for any single bundle J with |J| = r.

    r = 0 is the no-sale region; r >= 1 is k^r |Lambda(lambda_1..lambda_r)|
    times the no-sale volume of the incremental prices of the other items.
    """
    require_sja_shape(mech)
    p = mech.prices
    m = mech.m
    if r == 0:
        return no_sale_volume(p)
    body = SimBody(alphas=list(mech.profile.lambdas[:r]), scale=mech.profile.k)
    inside = body.volume()
    if r == m:
        return inside
    increments = p[r:] - p[r - 1]
    return inside * no_sale_volume(np.clip(increments, 0.0, None))


def subdomain_volume(
    mech: Mechanism,
    bundle: Iterable[int],
    method: str = "exact",
    samples: int = 1_000_000,
    seed: int = DEFAULT_SEED,
) -> float:
    """
    Volume of the region where exactly ``bundle`` (0-based items) is bought.

    ``mc`` counts samples whose evaluated bundle equals ``bundle``.
    """
    _check_method(method)
    items = _normalize_bundle(mech, bundle)
    if method == "exact":
        return size_class_volume(mech, len(items))

    target = np.zeros(mech.m, dtype=bool)
    target[list(items)] = True

    def kernel(u: np.ndarray) -> np.ndarray:
        allocation = mech.evaluate_many(u, check=False).allocation
        return np.all(allocation == target[None, :], axis=1).astype(float)

    return estimate_mean(kernel, mech.m, samples, seed).estimate


def expected_revenue(
    mech: Mechanism,
    method: str = "exact",
    samples: int = 1_000_000,
    seed: int = DEFAULT_SEED,
) -> RevenueEstimate:
    """
    Expected payment under uniform values on [0,1]^m.

    Raises:
        InvalidInputError: exact method with m > 3, or a menu without SJA shape
    """
    _check_method(method)
    with logger.track_operation("expected_revenue", m=mech.m, method=method) as meta:
        if method == "exact":
            if mech.m > MAX_EXACT_REVENUE_ITEMS:
                raise InvalidInputError(
                    "method",
                    method,
                    f"exact revenue supports m <= {MAX_EXACT_REVENUE_ITEMS}; use mc",
                )
            value = sum(
                comb(mech.m, r) * mech.profile.price(r) * size_class_volume(mech, r)
                for r in range(1, mech.m + 1)
            )
            meta["value"] = f"{value:.12g}"
            return RevenueEstimate(value=float(value), method=method)

        def kernel(u: np.ndarray) -> np.ndarray:
            return mech.evaluate_many(u, check=False).payment

        estimate = estimate_mean(kernel, mech.m, samples, seed)
        meta["value"] = f"{estimate.estimate:.12g}"
        return RevenueEstimate(
            value=estimate.estimate,
            method=method,
            stderr=estimate.stderr,
            samples=samples,
            seed=seed,
        )


def in_subdomain(mech: Mechanism, x: Sequence[float], bundle: Iterable[int]) -> bool:
    """
    Inequality test for ``x`` lying in the region of ``bundle``.

    J is bought when its items are the |J| most valuable, dropping its t
    cheapest items loses at least p_r - p_{r-t} (strictly, since ties go to
    the smaller bundle) and the s best outside items add at most
    p_{r+s} - p_r. Agrees with ``evaluate`` except on measure-zero ties.
    """
    x = np.asarray(x, dtype=float)
    items = _normalize_bundle(mech, bundle)
    inside = np.sort(x[list(items)]) if items else np.zeros(0)
    outside_mask = np.ones(mech.m, dtype=bool)
    outside_mask[list(items)] = False
    outside = -np.sort(-x[outside_mask])
    prices = mech.padded_prices
    r = len(items)

    if inside.size and outside.size and inside[0] < outside[0]:
        return False
    for t in range(1, r + 1):
        if not inside[:t].sum() > prices[r] - prices[r - t]:
            return False
    for s in range(1, mech.m - r + 1):
        if outside[:s].sum() > prices[r + s] - prices[r]:
            return False
    return True


def size_class_table(mech: Mechanism) -> Dict[int, Dict[str, float]]:
    """Per bundle size r: the number of bundles, each one's volume and their price."""
    return {
        r: {
            "bundles": comb(mech.m, r),
            "volume_each": size_class_volume(mech, r),
            "price": mech.profile.price(r),
        }
        for r in range(mech.m + 1)
    }
