"""
Bipartite graph between covered cells and boundary rows.

Every axis-j line of cells gets ``rows_per_line`` boundary rows appended
past x_j = 1: the first N/(m+1) form the main strip B, the remaining g the
thin strip B*. A covered cell is joined to every row of its axis-j line for
each item j it may be allocated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from ..config.constants import DEFAULT_SEED
from ..mechanism import Mechanism
from ..observability import ComputationLogger
from .grid import CertGrid, Probes, probe_mechanism

logger = ComputationLogger("dual_cert")


@dataclass
class MatchingGraph:
    """Left side: covered cells in C order. Right side: boundary rows by (axis, line, row)."""

    grid: CertGrid
    probes: Probes
    cells: np.ndarray
    biadjacency: csr_matrix

    @property
    def n_left(self) -> int:
        return self.cells.shape[0]

    @property
    def n_right(self) -> int:
        return self.biadjacency.shape[1]

    def column(self, axis: int, line: int, row: int) -> int:
        g = self.grid
        return (axis * g.lines_per_axis + line) * g.rows_per_line + row

    def decode_column(self, col: int) -> Tuple[int, int, int]:
        """(axis, line, row) of a right node."""
        g = self.grid
        block, row = divmod(int(col), g.rows_per_line)
        axis, line = divmod(block, g.lines_per_axis)
        return axis, line, row

    def column_axis(self, cols: np.ndarray) -> np.ndarray:
        g = self.grid
        return np.asarray(cols) // (g.rows_per_line * g.lines_per_axis)

    def boundary_columns(self) -> np.ndarray:
        """Right nodes in the main strip B."""
        rows = np.arange(self.n_right) % self.grid.rows_per_line
        return np.flatnonzero(rows < self.grid.boundary_rows)

    def neighbours(self, left: int) -> np.ndarray:
        start, end = self.biadjacency.indptr[left], self.biadjacency.indptr[left + 1]
        return self.biadjacency.indices[start:end]

    def without_columns(self, cols: np.ndarray) -> "MatchingGraph":
        """Copy with every edge into ``cols`` removed."""
        keep = np.ones(self.n_right)
        keep[np.asarray(cols, dtype=int)] = 0.0
        pruned = csr_matrix(self.biadjacency.multiply(keep[None, :]))
        pruned.eliminate_zeros()
        return MatchingGraph(self.grid, self.probes, self.cells, pruned)


def line_index(cells: np.ndarray, axis: int, n: int) -> np.ndarray:
    """Index of the axis-``axis`` line through each cell."""
    m = cells.shape[1]
    if m == 1:
        return np.zeros(cells.shape[0], dtype=np.int64)
    others = [a for a in range(m) if a != axis]
    return np.ravel_multi_index(tuple(cells[:, others].T), (n,) * (m - 1))


def build_matching_graph(mech: Mechanism, grid: CertGrid) -> MatchingGraph:
    """
    Probe the mechanism and connect each covered cell to the boundary rows
    of every line along which it may be allocated.

    Raises:
        GridMisalignedError: N not a multiple of m+1 (raised by CertGrid)
    """
    with logger.track_operation("build_matching_graph", m=grid.m, N=grid.N) as meta:
        probes = probe_mechanism(mech, grid)
        cells = np.argwhere(probes.cover)
        allowed = probes.allowed[tuple(cells.T)] if cells.size else np.zeros((0, grid.m), bool)

        rows: List[np.ndarray] = []
        cols: List[np.ndarray] = []
        r = grid.rows_per_line
        for axis in range(grid.m):
            left = np.flatnonzero(allowed[:, axis])
            if left.size == 0:
                continue
            lines = line_index(cells[left], axis, grid.N)
            base = (axis * grid.lines_per_axis + lines) * r
            cols.append((base[:, None] + np.arange(r)[None, :]).ravel())
            rows.append(np.repeat(left, r))

        n_right = grid.m * grid.lines_per_axis * r
        if rows:
            row_idx = np.concatenate(rows)
            col_idx = np.concatenate(cols)
        else:
            row_idx = col_idx = np.zeros(0, dtype=np.int64)
        biadjacency = csr_matrix(
            (np.ones(row_idx.size), (row_idx, col_idx)), shape=(cells.shape[0], n_right)
        )
        meta["left"] = cells.shape[0]
        meta["right"] = n_right
        meta["edges"] = int(biadjacency.nnz)
    return MatchingGraph(grid=grid, probes=probes, cells=cells, biadjacency=biadjacency)


@dataclass
class HallSpotcheck:
    samples: int
    violations: int
    worst_ratio: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "samples": self.samples,
            "violations": self.violations,
            "worst_ratio": self.worst_ratio,
            "passed": self.passed,
        }


def hall_spotcheck(
    graph: MatchingGraph, samples: int = 1000, seed: int = DEFAULT_SEED
) -> HallSpotcheck:
    """
    Sample node sets inside single slices and compare |S| with |N(S)|.

    A slice groups covered cells by the bundle allocated at their centre and
    their coordinates outside that bundle.
    """
    groups: Dict[Tuple, List[int]] = {}
    centre = graph.probes.centre_allocation[tuple(graph.cells.T)]
    for i, (cell, bundle) in enumerate(zip(graph.cells, centre)):
        key = (tuple(bundle.tolist()), tuple(cell[~bundle].tolist()))
        groups.setdefault(key, []).append(i)
    keys = sorted(groups)
    report = HallSpotcheck(samples=samples, violations=0, worst_ratio=0.0)
    if not keys:
        return report

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        members = groups[keys[rng.integers(len(keys))]]
        size = int(rng.integers(1, len(members) + 1))
        chosen = rng.choice(members, size=size, replace=False)
        reached = np.unique(np.concatenate([graph.neighbours(int(i)) for i in chosen]))
        ratio = size / max(reached.size, 1)
        report.worst_ratio = max(report.worst_ratio, ratio)
        if size > reached.size:
            report.violations += 1
    return report
