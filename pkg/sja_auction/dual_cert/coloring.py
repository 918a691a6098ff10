"""
Grid colorings and the dual variables they encode.

Color j+1 on a cell means z_j grows with slope m+1 through that cell along
axis j; color 0 means no z_j grows there. Each z_j is therefore piecewise
linear along its own axis and constant across the others, so the midpoint
sum over cell centres is its exact integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config.constants import DEFAULT_SEED
from ..errors import InfeasibleColoringError, InvalidInputError
from ..observability import ComputationLogger
from .grid import CertGrid
from .matching import Matching

logger = ComputationLogger("dual_cert")


@dataclass
class GridColoring:
    """``color`` has shape (N,)*m with values in {0, ..., m}."""

    grid: CertGrid
    color: np.ndarray

    def __post_init__(self):
        self.color = np.asarray(self.color, dtype=np.int8)
        if self.color.shape != self.grid.shape:
            raise InvalidInputError("color", self.color.shape, f"expected shape {self.grid.shape}")
        if self.color.min(initial=0) < 0 or self.color.max(initial=0) > self.grid.m:
            raise InvalidInputError("color", "values", f"colors must lie in 0..{self.grid.m}")

    @classmethod
    def blank(cls, grid: CertGrid) -> "GridColoring":
        return cls(grid, np.zeros(grid.shape, dtype=np.int8))

    def copy(self) -> "GridColoring":
        return GridColoring(self.grid, self.color.copy())

    def colored(self, axis: int) -> np.ndarray:
        return self.color == axis + 1

    def line_counts(self, axis: int) -> np.ndarray:
        """Cells of color axis+1 on every axis-``axis`` line; shape (N,)*(m-1)."""
        return np.asarray(self.colored(axis).sum(axis=axis))

    def _first_short_line(self) -> Optional[Tuple[int, Tuple[int, ...], int]]:
        required = self.grid.boundary_rows
        for axis in range(self.grid.m):
            counts = self.line_counts(axis)
            short = np.argwhere(counts < required)
            if short.size:
                line = tuple(int(i) for i in short[0])
                return axis, line, int(counts[line])
        return None

    @property
    def is_feasible(self) -> bool:
        return self._first_short_line() is None

    def check_feasible(self) -> None:
        """
        Raises:
            InfeasibleColoringError: the first line, in axis then C order,
                with fewer than N/(m+1) cells of its color
        """
        short = self._first_short_line()
        if short is not None:
            axis, line, count = short
            raise InfeasibleColoringError(axis, line, count, self.grid.boundary_rows)

    def z_centre(self, axis: int) -> np.ndarray:
        """z_j at every cell centre."""
        step = (self.grid.m + 1) * self.grid.eps_prime
        colored = self.colored(axis).astype(float)
        below = np.cumsum(colored, axis=axis) - colored
        return step * (below + 0.5 * colored)

    def z_bottom(self, axis: int) -> np.ndarray:
        """z_j(0, .) on every axis-``axis`` line, read back from the first cell."""
        step = (self.grid.m + 1) * self.grid.eps_prime
        first = np.take(self.z_centre(axis), 0, axis=axis)
        return first - 0.5 * step * np.take(self.colored(axis), 0, axis=axis)

    def z_top(self, axis: int) -> np.ndarray:
        """z_j(1, .) on every axis-``axis`` line."""
        return (self.grid.m + 1) * self.grid.eps_prime * self.line_counts(axis)

    def increments(self) -> np.ndarray:
        """Sum over j of the growth of z_j inside each cell."""
        step = (self.grid.m + 1) * self.grid.eps_prime
        return step * (self.color > 0)

    def to_dict(self) -> Dict[str, object]:
        counts = np.bincount(self.color.ravel(), minlength=self.grid.m + 1)
        return {
            "m": self.grid.m,
            "N": self.grid.N,
            "color_counts": [int(c) for c in counts],
            "feasible": self.is_feasible,
        }


@dataclass
class DualObjective:
    value: float
    z_top: List[np.ndarray]

    @property
    def min_top(self) -> float:
        return float(min(float(top.min()) for top in self.z_top))

    def to_dict(self) -> Dict[str, float]:
        return {"value": self.value, "min_z_top": self.min_top}


def coloring_from_matching(matching: Matching, grid: CertGrid) -> GridColoring:
    """
    Give every covered cell the color of the boundary side it is matched to.

    Raises:
        InfeasibleColoringError: a line ends up with too few cells of its color
    """
    graph = matching.graph
    coloring = GridColoring.blank(grid)
    axes = graph.column_axis(matching.cell_to_column)
    if graph.cells.size:
        coloring.color[tuple(graph.cells.T)] = axes + 1
    try:
        coloring.check_feasible()
    except InfeasibleColoringError as e:
        logger.error("coloring infeasible", error=e, m=grid.m, N=grid.N)
        raise
    return coloring


def dual_objective(coloring: GridColoring) -> DualObjective:
    """Sum of the integrals of the reconstructed z_j."""
    grid = coloring.grid
    cell_volume = grid.eps_prime**grid.m
    total = sum(float(coloring.z_centre(axis).sum()) for axis in range(grid.m))
    return DualObjective(
        value=total * cell_volume,
        z_top=[coloring.z_top(axis) for axis in range(grid.m)],
    )


def perturb_coloring(
    coloring: GridColoring, flips: int, seed: int = DEFAULT_SEED
) -> GridColoring:
    """
    Recolor random cells, keeping only changes that leave every line feasible.

    At most ``flips`` attempts are made; rejected attempts leave the coloring as it was.
    """
    grid = coloring.grid
    required = grid.boundary_rows
    result = coloring.copy()
    counts = [result.line_counts(axis) for axis in range(grid.m)]
    rng = np.random.default_rng(seed)
    for _ in range(flips):
        cell = tuple(int(i) for i in rng.integers(0, grid.N, size=grid.m))
        old = int(result.color[cell])
        new = int(rng.integers(0, grid.m + 1))
        if new == old:
            continue
        if old > 0:
            axis = old - 1
            line = cell[:axis] + cell[axis + 1 :]
            if counts[axis][line] <= required:
                continue
            counts[axis][line] -= 1
        if new > 0:
            axis = new - 1
            counts[axis][cell[:axis] + cell[axis + 1 :]] += 1
        result.color[cell] = new
    return result
