"""
Voxel bodies: boolean occupancy lattices standing in for continuous bodies.

Cell ``i`` along an axis covers ``[i * cell_size, (i + 1) * cell_size]``.
Projections of a union of cells are unions of projected cells, so every
volume and deficiency below is an exact count.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import permutations
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import InvalidInputError
from .sim import SimBody

RLE_HEADER = "# voxel-body v1"
_RLE_TOKEN = re.compile(r"^([01])x(\d+)$")


@dataclass
class VoxelBody:
    """Occupancy lattice over {0..grid-1}^dim with cells of side ``cell_size``."""

    occupancy: np.ndarray
    cell_size: float

    def __post_init__(self):
        occ = np.asarray(self.occupancy, dtype=bool)
        if occ.ndim < 1:
            raise InvalidInputError("occupancy", occ.shape, "needs at least one axis")
        if len(set(occ.shape)) != 1:
            raise InvalidInputError("occupancy", occ.shape, "all axes must have the same length")
        if not self.cell_size > 0.0:
            raise InvalidInputError("cell_size", self.cell_size, "must be positive")
        self.occupancy = occ

    @classmethod
    def empty(cls, dim: int, grid: int, cell_size: float) -> "VoxelBody":
        return cls(np.zeros((grid,) * dim, dtype=bool), cell_size)

    @classmethod
    def full(cls, dim: int, grid: int, cell_size: float) -> "VoxelBody":
        return cls(np.ones((grid,) * dim, dtype=bool), cell_size)

    @property
    def dim(self) -> int:
        return self.occupancy.ndim

    @property
    def grid(self) -> int:
        return self.occupancy.shape[0]

    @property
    def count(self) -> int:
        return int(self.occupancy.sum())

    def is_empty(self) -> bool:
        return not self.occupancy.any()

    def volume(self) -> float:
        return self.count * self.cell_size**self.dim

    def _like(self, occupancy: np.ndarray) -> "VoxelBody":
        return VoxelBody(occupancy, self.cell_size)

    def projection(self, axis: int) -> "VoxelBody":
        """Drop coordinate ``axis``."""
        if self.dim < 2:
            raise InvalidInputError("dim", self.dim, "cannot project a 1-dimensional body")
        return self._like(self.occupancy.any(axis=axis))

    def projection_count(self, axis: int) -> int:
        if self.dim == 1:
            return int(self.occupancy.any())
        return int(self.occupancy.any(axis=axis).sum())

    def projection_volume(self, axis: int) -> float:
        """(dim-1)-volume of the projection; a nonempty 1D body projects to a point of measure 1."""
        return self.projection_count(axis) * self.cell_size ** (self.dim - 1)

    def projection_volumes(self) -> List[float]:
        return [self.projection_volume(j) for j in range(self.dim)]

    def slice(self, axis: int, index: int) -> "VoxelBody":
        """Cells with coordinate ``axis`` equal to ``index``."""
        if self.dim < 2:
            raise InvalidInputError("dim", self.dim, "cannot slice a 1-dimensional body")
        if not 0 <= index < self.grid:
            raise InvalidInputError("index", index, f"must lie in [0, {self.grid})")
        return self._like(np.take(self.occupancy, index, axis=axis))

    def _check_compatible(self, other: "VoxelBody"):
        if self.occupancy.shape != other.occupancy.shape or not math.isclose(
            self.cell_size, other.cell_size
        ):
            raise InvalidInputError("other", other.occupancy.shape, "lattices differ")

    def union(self, other: "VoxelBody") -> "VoxelBody":
        self._check_compatible(other)
        return self._like(self.occupancy | other.occupancy)

    def intersection(self, other: "VoxelBody") -> "VoxelBody":
        self._check_compatible(other)
        return self._like(self.occupancy & other.occupancy)

    def issubset(self, other: "VoxelBody") -> bool:
        self._check_compatible(other)
        return not np.any(self.occupancy & ~other.occupancy)

    def is_downward_closed(self) -> bool:
        occ = self.occupancy.astype(np.int8)
        return all(np.all(np.diff(occ, axis=a) <= 0) for a in range(self.dim))

    def down_closure(self) -> "VoxelBody":
        occ = self.occupancy.copy()
        for axis in range(self.dim):
            flipped = np.flip(occ, axis=axis)
            occ = np.flip(np.logical_or.accumulate(flipped, axis=axis), axis=axis)
        return self._like(occ)

    def is_symmetric(self) -> bool:
        occ = self.occupancy
        return all(np.array_equal(occ, np.swapaxes(occ, a, a + 1)) for a in range(self.dim - 1))

    def symmetric_closure(self) -> "VoxelBody":
        """Union of the body with all of its coordinate permutations."""
        occ = np.zeros_like(self.occupancy)
        for perm in permutations(range(self.dim)):
            occ |= np.transpose(self.occupancy, perm)
        return self._like(occ)

    def width(self, axis: int = 0) -> float:
        """Extent along ``axis`` measured from the origin; 0 for an empty body."""
        if self.is_empty():
            return 0.0
        others = tuple(a for a in range(self.dim) if a != axis)
        line = self.occupancy.any(axis=others) if others else self.occupancy
        return float((np.flatnonzero(line).max() + 1) * self.cell_size)

    def cell_of(self, x: Sequence[float]) -> Tuple[int, ...]:
        """Index of the cell whose closed upper face holds x: ceil(x/c) - 1, floored at 0."""
        x = np.asarray(x, dtype=float)
        if x.size != self.dim:
            raise InvalidInputError("x", x.size, f"expected {self.dim} coordinates")
        idx = np.maximum(np.ceil(x / self.cell_size).astype(int) - 1, 0)
        return tuple(int(i) for i in idx)

    def contains_point(self, x: Sequence[float]) -> bool:
        idx = self.cell_of(x)
        if any(i >= self.grid for i in idx):
            return False
        return bool(self.occupancy[idx])

    def deficiency(self, k: float) -> float:
        """|A| - k * sum_j |A_{-j}|."""
        if k <= 0.0:
            raise InvalidInputError("k", k, "must be positive")
        return self.volume() - k * sum(self.projection_volumes())

    def encoding(self) -> bytes:
        """C-order occupancy bits; orders equally sized bodies lexicographically."""
        return np.packbits(self.occupancy.ravel()).tobytes()

    def to_rle(self) -> str:
        return encode_rle(self)


def _cell_points(dim: int, grid: int, offset: float, cell_size: float) -> np.ndarray:
    idx = np.indices((grid,) * dim).reshape(dim, -1).T
    return (idx + offset) * cell_size


def voxelize(
    body: SimBody, grid: int, rule: str = "inner", cell_size: float | None = None
) -> VoxelBody:
    """
    Lattice approximation of a SIM body.

    Args:
        body: the body to approximate
        grid: cells per axis
        rule: ``inner`` keeps cells entirely inside the body (upper corner
            inside, since the body is downward closed); ``center`` keeps cells
            whose centre is inside
        cell_size: defaults to width / grid so the lattice just covers the body
    """
    if grid < 1:
        raise InvalidInputError("grid", grid, "must be at least 1")
    offsets = {"inner": 1.0, "center": 0.5}
    if rule not in offsets:
        raise InvalidInputError("rule", rule, f"must be one of {sorted(offsets)}")
    cell = cell_size if cell_size is not None else body.width() / grid
    points = _cell_points(body.r, grid, offsets[rule], cell)
    occ = body.contains_many(points).reshape((grid,) * body.r)
    return VoxelBody(occ, cell)


def boundary_cell_count(body: SimBody, grid: int, cell_size: float | None = None) -> int:
    """Cells whose lower corner is in the body but whose upper corner is not."""
    cell = cell_size if cell_size is not None else body.width() / grid
    lower = body.contains_many(_cell_points(body.r, grid, 0.0, cell))
    upper = body.contains_many(_cell_points(body.r, grid, 1.0, cell))
    return int(np.sum(lower & ~upper))


def encode_rle(body: VoxelBody) -> str:
    """
    Serialize to the run-length text format.

    ``# voxel-body v1``, a ``dim= grid= cell_size=`` header line, then
    ``<bit>x<count>`` runs over the C-order occupancy.
    """
    bits = body.occupancy.ravel().astype(np.int8)
    change = np.flatnonzero(np.diff(bits)) + 1
    starts = np.concatenate([[0], change])
    ends = np.concatenate([change, [bits.size]])
    runs = [f"{int(bits[s])}x{int(e - s)}" for s, e in zip(starts, ends)]
    header = f"dim={body.dim} grid={body.grid} cell_size={body.cell_size!r}"
    return "\n".join([RLE_HEADER, header, " ".join(runs)]) + "\n"


def decode_rle(text: str) -> VoxelBody:
    """Parse the run-length text format."""
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines or lines[0] != RLE_HEADER:
        raise InvalidInputError("rle", lines[:1], f"missing '{RLE_HEADER}' header")
    if len(lines) < 2:
        raise InvalidInputError("rle", lines, "missing dimension line")
    try:
        fields = dict(item.split("=", 1) for item in lines[1].split())
        dim = int(fields["dim"])
        grid = int(fields["grid"])
        cell_size = float(fields["cell_size"])
    except (KeyError, ValueError) as e:
        raise InvalidInputError("rle", lines[1], f"bad header: {e}") from e

    bits: List[np.ndarray] = []
    for token in " ".join(lines[2:]).split():
        match = _RLE_TOKEN.match(token)
        if not match:
            raise InvalidInputError("rle", token, "runs must look like <bit>x<count>")
        bits.append(np.full(int(match.group(2)), match.group(1) == "1", dtype=bool))
    flat = np.concatenate(bits) if bits else np.zeros(0, dtype=bool)
    if flat.size != grid**dim:
        raise InvalidInputError("rle", flat.size, f"expected {grid**dim} cells")
    return VoxelBody(flat.reshape((grid,) * dim), cell_size)
