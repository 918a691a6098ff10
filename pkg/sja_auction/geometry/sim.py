"""
Symmetric subset-sum bodies.

``SimBody(alphas=[a_1, ..., a_r], scale=q)`` is the set of nonnegative
x in R^r whose every j-subset sums to at most a_{r-j+1} + ... + a_r, scaled
by q. Only the j largest coordinates matter for each cardinality j, so
membership needs a single descending sort.
"""

from __future__ import annotations

from typing import List, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.optimize import linprog

from ..errors import InvalidInputError
from ..volumes import no_sale_volume

_MEMBERSHIP_RTOL = 1e-12


class SimBody(BaseModel):
    """q * Lambda(a_1, ..., a_r) with 0 < a_1 <= ... <= a_r."""

    model_config = ConfigDict(frozen=True)

    alphas: List[float] = Field(..., min_length=1, description="a_1..a_r, non-decreasing")
    scale: float = Field(default=1.0, gt=0.0, description="Uniform scaling factor q")

    @field_validator("alphas")
    @classmethod
    def validate_alphas(cls, v: List[float]) -> List[float]:
        if any(a <= 0.0 for a in v):
            raise ValueError("alphas must be positive")
        if any(b < a for a, b in zip(v, v[1:])):
            raise ValueError("alphas must be non-decreasing")
        return v

    @property
    def r(self) -> int:
        return len(self.alphas)

    @property
    def effective_alphas(self) -> np.ndarray:
        return self.scale * np.asarray(self.alphas, dtype=float)

    def tail_sums(self) -> np.ndarray:
        """T_j = sum of the j largest effective alphas, j = 1..r."""
        return np.cumsum(self.effective_alphas[::-1])

    def contains_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorised membership; rows must be nonnegative with r coordinates."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.shape[1] != self.r:
            raise InvalidInputError("x", points.shape, f"expected {self.r} coordinates")
        if np.any(points < 0.0):
            raise InvalidInputError("x", points.min(), "coordinates must be nonnegative")
        tails = self.tail_sums()
        prefix = np.cumsum(-np.sort(-points, axis=1), axis=1)
        return np.all(prefix <= tails[None, :] * (1.0 + _MEMBERSHIP_RTOL), axis=1)

    def contains(self, x: Sequence[float]) -> bool:
        return bool(self.contains_many(np.asarray(x, dtype=float)[None, :])[0])

    def width(self) -> float:
        """Largest single coordinate in the body, q * a_r."""
        return float(self.effective_alphas[-1])

    def volume(self) -> float:
        return sim_volume(self)

    def projection(self) -> "SimBody":
        """Projection dropping one coordinate: q * Lambda(a_2, ..., a_r)."""
        if self.r < 2:
            raise InvalidInputError("r", self.r, "a 1-dimensional body has no projection body")
        return SimBody(alphas=self.alphas[1:], scale=self.scale)

    def top_slice(self) -> "SimBody":
        """Slice at x_r = q * a_r: q * Lambda(a_1, ..., a_{r-1})."""
        if self.r < 2:
            raise InvalidInputError("r", self.r, "a 1-dimensional body has no slice body")
        return SimBody(alphas=self.alphas[:-1], scale=self.scale)

    def scaled(self, q: float) -> "SimBody":
        return SimBody(alphas=self.alphas, scale=self.scale * q)

    def projection_volume(self) -> float:
        """Volume of any coordinate projection; 1 for r = 1 (a point)."""
        return 1.0 if self.r == 1 else sim_volume(self.projection())

    def deficiency(self, k: float) -> float:
        return sim_deficiency(self, k)


def sim_membership(body: SimBody, x: Sequence[float]) -> bool:
    """True iff every subset sum of x is within the matching tail of alphas."""
    return body.contains(x)


def sim_volume(body: SimBody) -> float:
    """
    Exact volume of a SIM body.

    With c = a_r the body is c times the no-sale region of the price
    sequence T_j / c, whose differences a_{r-j+1}/c are non-increasing, so
    the exact slice recursion applies directly.
    """
    c = float(body.alphas[-1])
    tails = np.cumsum(np.asarray(body.alphas[::-1], dtype=float)) / c
    tails = np.minimum(tails, np.arange(1, body.r + 1, dtype=float))
    base = c**body.r * no_sale_volume(tails, max_order=body.r)
    return float(body.scale**body.r * base)


def sim_deficiency(body: SimBody, k: float) -> float:
    """delta_k = |body| - k * r * |projection|; every projection is the same body."""
    if k <= 0.0:
        raise InvalidInputError("k", k, "must be positive")
    return body.volume() - k * body.r * body.projection_volume()


def in_permutation_hull(body: SimBody, x: Sequence[float]) -> bool:
    """
    Whether x lies below some convex combination of permutations of the alphas.

    Such combinations are exactly P @ alpha for doubly stochastic P, so this
    is a feasibility LP over the r*r entries of P.
    """
    x = np.asarray(x, dtype=float)
    r = body.r
    if x.size != r:
        raise InvalidInputError("x", x.size, f"expected {r} coordinates")
    if np.any(x < 0.0):
        return False
    alpha = body.effective_alphas

    a_eq = []
    for i in range(r):
        row = np.zeros((r, r))
        row[i, :] = 1.0
        a_eq.append(row.ravel())
    for j in range(r):
        col = np.zeros((r, r))
        col[:, j] = 1.0
        a_eq.append(col.ravel())
    # -(P alpha)_i <= -x_i
    a_ub = np.zeros((r, r * r))
    for i in range(r):
        a_ub[i, i * r : (i + 1) * r] = -alpha
    res = linprog(
        np.zeros(r * r),
        A_ub=a_ub,
        b_ub=-x + _MEMBERSHIP_RTOL * max(1.0, float(alpha.max())),
        A_eq=np.vstack(a_eq),
        b_eq=np.ones(2 * r),
        bounds=[(0.0, None)] * (r * r),
        method="highs",
    )
    return bool(res.status == 0)
