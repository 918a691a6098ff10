"""
The certification lattice and the mechanism probed on it.

The unit cube is split into N^m cells of side 1/N. Every cell is probed at
its 2^m corners and its centre. The no-sale region is convex, so a cell
meets the closure of the selling region exactly when some corner sells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import GridMisalignedError
from ..mechanism import Mechanism


class CertGrid(BaseModel):
    """N cells per axis for m items; N must be a multiple of m+1."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(..., ge=1, description="Number of items")
    N: int = Field(..., ge=1, description="Cells per axis")

    @model_validator(mode="after")
    def validate_alignment(self) -> "CertGrid":
        if self.N % (self.m + 1) != 0:
            raise GridMisalignedError(self.N, self.m)
        return self

    @property
    def eps_prime(self) -> float:
        return 1.0 / self.N

    @property
    def k(self) -> float:
        return 1.0 / (self.m + 1)

    @property
    def g(self) -> int:
        """Width, in cells, of the thin extra boundary strip: ceil(sqrt(m) + 1)."""
        return math.ceil(math.sqrt(self.m) + 1.0)

    @property
    def boundary_rows(self) -> int:
        """Cells per line in the main boundary strip, N/(m+1)."""
        return self.N // (self.m + 1)

    @property
    def rows_per_line(self) -> int:
        return self.boundary_rows + self.g

    @property
    def lines_per_axis(self) -> int:
        return self.N ** (self.m - 1)

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.m

    @property
    def eps(self) -> float:
        """Complementarity tolerance g * m * (m+1) / N."""
        return self.g * self.m * (self.m + 1) * self.eps_prime

    @property
    def gap_bound(self) -> float:
        return (3 * self.m + 1) * self.eps


@dataclass
class Probes:
    """
    Mechanism outcomes sampled on the lattice.

    ``allowed[c, j]`` says item j is allocated at some probe of cell c;
    ``corner_utility`` is the largest utility over the cell's corners;
    ``centre_allocation`` is the allocation at the cell centre;
    ``always[c, j]`` says item j is allocated at every probe of cell c.
    """

    grid: CertGrid
    allowed: np.ndarray
    corner_utility: np.ndarray
    centre_allocation: np.ndarray
    always: np.ndarray

    @property
    def cover(self) -> np.ndarray:
        """Cells meeting the closure of the selling region."""
        return self.allowed.any(axis=-1)


def probe_mechanism(mech: Mechanism, grid: CertGrid) -> Probes:
    """Evaluate ``mech`` on all lattice points and cell centres once."""
    m, n = grid.m, grid.N
    axis = np.arange(n + 1) / n
    lattice = np.stack(np.meshgrid(*([axis] * m), indexing="ij"), axis=-1).reshape(-1, m)
    at_lattice = mech.evaluate_many(lattice)
    alloc = at_lattice.allocation.reshape((n + 1,) * m + (m,))
    util = at_lattice.utility.reshape((n + 1,) * m)

    allowed = np.zeros(grid.shape + (m,), dtype=bool)
    always = np.ones(grid.shape + (m,), dtype=bool)
    corner_utility = np.zeros(grid.shape)
    for offset in product((0, 1), repeat=m):
        window = tuple(slice(o, o + n) for o in offset)
        allowed |= alloc[window]
        always &= alloc[window]
        corner_utility = np.maximum(corner_utility, util[window])

    centres = (np.indices(grid.shape).reshape(m, -1).T + 0.5) / n
    centre_allocation = mech.evaluate_many(centres).allocation.reshape(grid.shape + (m,))
    allowed |= centre_allocation
    always &= centre_allocation
    return Probes(
        grid=grid,
        allowed=allowed,
        corner_utility=corner_utility,
        centre_allocation=centre_allocation,
        always=always,
    )
