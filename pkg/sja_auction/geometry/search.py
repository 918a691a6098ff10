"""
Maximum-deficiency search over downward-closed symmetric sub-bodies.

Exhaustive mode enumerates the common projection P of a candidate instead of
the candidate itself. For a fixed P the largest sub-body whose projections
all lie in P is its shadow ``{x in C : every projection of x is in P}``; it
has at least the volume and at most the projections of any sub-body with
projection P, so maximizing over shadows is a true maximum over the family.
In 2D the shadows are indexed by interval lengths, in 3D by self-conjugate
partitions inside the grid square (one per subset of diagonal hooks).

Local mode adds and removes whole symmetric orbits of cells greedily,
starting from the container.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..config import get_settings
from ..config.constants import (
    MAX_EXHAUSTIVE_CANDIDATES,
    MAX_EXHAUSTIVE_DIM,
    MAX_LOCAL_ITERATIONS,
)
from ..errors import InvalidInputError, SearchSpaceTooLarge
from ..observability import ComputationLogger
from .voxel import VoxelBody

logger = ComputationLogger("geometry")

_DEFICIENCY_TOL = 1e-12

Candidate = Tuple[float, int, bytes, np.ndarray]


@dataclass
class SearchResult:
    """Best deficiency over the searched family and the body attaining it."""

    best_deficiency: float
    witness: Optional[VoxelBody]
    mode: str
    k: float
    candidates: int
    slack_bound: float
    family: str = "downward-closed symmetric lattice sub-bodies"
    note: str = ""
    history: List[float] = field(default_factory=list, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "best_deficiency": self.best_deficiency if self.witness is not None else None,
            "witness_volume": self.witness.volume() if self.witness is not None else None,
            "witness_cells": self.witness.count if self.witness is not None else 0,
            "mode": self.mode,
            "k": self.k,
            "candidates": self.candidates,
            "slack_bound": self.slack_bound,
            "family": self.family,
            "note": self.note,
        }


def slack_bound(container: VoxelBody) -> float:
    """Discretization slack d * cell * w^(d-1) reported next to lattice maxima."""
    w = container.width()
    return container.dim * container.cell_size * w ** (container.dim - 1)


def _score(occ: np.ndarray, k: float, cell: float) -> float:
    dim = occ.ndim
    if dim == 1:
        projections = float(occ.any())
    else:
        projections = sum(int(occ.any(axis=j).sum()) for j in range(dim)) * cell ** (dim - 1)
    return int(occ.sum()) * cell**dim - k * projections


def _better(a: Candidate, b: Optional[Candidate]) -> bool:
    """Deficiency first, then larger volume, then the smaller encoding."""
    if b is None:
        return True
    if a[0] > b[0] + _DEFICIENCY_TOL:
        return True
    if a[0] < b[0] - _DEFICIENCY_TOL:
        return False
    if a[1] != b[1]:
        return a[1] > b[1]
    return a[2] < b[2]


def _candidate(occ: np.ndarray, k: float, cell: float) -> Candidate:
    return (
        _score(occ, k, cell),
        int(occ.sum()),
        np.packbits(occ.ravel()).tobytes(),
        occ,
    )


def _shadow(projection: np.ndarray, container: np.ndarray) -> np.ndarray:
    dim = container.ndim
    occ = container.copy()
    for j in range(dim):
        occ &= np.expand_dims(projection, axis=j)
    return occ


def _self_conjugate_partitions(grid: int) -> Iterator[np.ndarray]:
    """Every symmetric staircase in the grid square, built from distinct diagonal hooks."""
    arms = list(range(grid - 1, -1, -1))
    for size in range(0, grid + 1):
        for chosen in combinations(arms, size):
            shape = np.zeros((grid, grid), dtype=bool)
            for i, arm in enumerate(chosen):
                shape[i, i : i + arm + 1] = True
                shape[i : i + arm + 1, i] = True
            yield shape


def _projections(dim: int, grid: int) -> Iterator[np.ndarray]:
    if dim == 1:
        # the projection is a point; sub-bodies are initial runs
        for length in range(grid + 1):
            yield np.array(length)
    elif dim == 2:
        for length in range(grid + 1):
            yield np.arange(grid) < length
    else:
        yield from _self_conjugate_partitions(grid)


def exhaustive_candidate_count(dim: int, grid: int) -> Optional[int]:
    """Number of shadows enumerated; None when the dimension has no enumeration."""
    if dim <= 2:
        return grid + 1
    if dim == MAX_EXHAUSTIVE_DIM:
        return 2**grid
    return None


def _check_container(container: VoxelBody):
    if not container.is_downward_closed():
        raise InvalidInputError("container", container.dim, "must be downward closed")
    if not container.is_symmetric():
        raise InvalidInputError("container", container.dim, "must be symmetric")


def _best_of(items: List[Candidate]) -> Optional[Candidate]:
    best: Optional[Candidate] = None
    for item in items:
        if _better(item, best):
            best = item
    return best


def _exhaustive(container: VoxelBody, k: float) -> Tuple[Optional[Candidate], int]:
    dim, grid = container.dim, container.grid
    needed = exhaustive_candidate_count(dim, grid)
    if needed is None or needed > MAX_EXHAUSTIVE_CANDIDATES:
        raise SearchSpaceTooLarge(dim, grid, needed, MAX_EXHAUSTIVE_CANDIDATES)

    occ = container.occupancy
    cell = container.cell_size

    def evaluate(projection: np.ndarray) -> Optional[Candidate]:
        if dim == 1:
            shadow = occ & (np.arange(grid) < int(projection))
        else:
            shadow = _shadow(projection, occ)
        if not shadow.any():
            return None
        return _candidate(shadow, k, cell)

    projections = list(_projections(dim, grid))
    threads = get_settings().threads
    if threads > 1 and len(projections) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            evaluated = list(pool.map(evaluate, projections))
    else:
        evaluated = [evaluate(p) for p in projections]
    # merge in enumeration order
    best = _best_of([c for c in evaluated if c is not None])
    return best, len(projections)


def _orbit(cell: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    return sorted(set(permutations(cell)))


def _canonical(mask: np.ndarray) -> List[Tuple[int, ...]]:
    """Cells of ``mask`` with non-increasing coordinates."""
    cells = np.argwhere(mask)
    if cells.shape[1] > 1:
        cells = cells[np.all(np.diff(cells, axis=1) <= 0, axis=1)]
    return [tuple(int(v) for v in c) for c in cells]


def _shift(occ: np.ndarray, axis: int, step: int) -> np.ndarray:
    """occ evaluated at x + step * e_axis, False outside the lattice."""
    out = np.zeros_like(occ)
    n = occ.shape[axis]
    src = [slice(None)] * occ.ndim
    dst = [slice(None)] * occ.ndim
    if step > 0:
        src[axis] = slice(step, n)
        dst[axis] = slice(0, n - step)
    else:
        src[axis] = slice(0, n + step)
        dst[axis] = slice(-step, n)
    out[tuple(dst)] = occ[tuple(src)]
    return out


def _column_counts(occ: np.ndarray) -> List[np.ndarray]:
    if occ.ndim == 1:
        return [np.array(int(occ.sum()))]
    return [occ.sum(axis=j) for j in range(occ.ndim)]


def _drop(cell: Tuple[int, ...], axis: int) -> Tuple[int, ...]:
    return cell[:axis] + cell[axis + 1 :]


def _move_gain(
    orbit: List[Tuple[int, ...]], columns: List[np.ndarray], adding: bool, k: float, cell: float
) -> float:
    dim = len(orbit[0])
    changed = 0
    for axis in range(dim):
        hits: Dict[Tuple[int, ...], int] = {}
        for c in orbit:
            key = _drop(c, axis)
            hits[key] = hits.get(key, 0) + 1
        for key, n in hits.items():
            current = int(columns[axis][key]) if dim > 1 else int(columns[axis])
            if adding and current == 0:
                changed += 1
            elif not adding and current == n:
                changed += 1
    sign = 1.0 if adding else -1.0
    return sign * (len(orbit) * cell**dim - k * changed * cell ** (dim - 1))


def _local(container: VoxelBody, k: float) -> Tuple[Optional[Candidate], int, List[float]]:
    occ = container.occupancy.copy()
    cell = container.cell_size
    dim = container.dim
    columns = _column_counts(occ)
    evaluated = 0
    history = [_score(occ, k, cell)]

    for _ in range(MAX_LOCAL_ITERATIONS):
        inside = occ
        maximal = inside.copy()
        addable = container.occupancy & ~inside
        for axis in range(dim):
            maximal &= ~_shift(inside, axis, 1)
            below = _shift(inside, axis, -1)
            at_floor = np.zeros_like(inside)
            index = [slice(None)] * dim
            index[axis] = 0
            at_floor[tuple(index)] = True
            addable &= below | at_floor

        best_move = None
        best_key = None
        for adding, mask in ((True, addable), (False, maximal)):
            for rep in _canonical(mask):
                orbit = _orbit(rep)
                if not adding and len(orbit) == int(occ.sum()):
                    continue
                gain = _move_gain(orbit, columns, adding, k, cell)
                evaluated += 1
                key = (gain, len(orbit) if adding else -len(orbit), tuple(-v for v in rep))
                if best_key is None or key > best_key:
                    best_key = key
                    best_move = (adding, orbit)
        if best_move is None or best_key[0] <= _DEFICIENCY_TOL:
            break

        adding, orbit = best_move
        for c in orbit:
            occ[c] = adding
        columns = _column_counts(occ)
        history.append(_score(occ, k, cell))

    if not occ.any():
        return None, evaluated, history
    return _candidate(occ, k, cell), evaluated, history


def deficiency_search(container: VoxelBody, k: float, mode: str = "exhaustive") -> SearchResult:
    """
    Largest k-deficiency of a downward-closed symmetric sub-body of ``container``.

    Args:
        container: downward-closed symmetric voxel body
        k: deficiency weight
        mode: ``exhaustive`` (dim <= 3, bounded enumeration) or ``local``

    Returns:
        SearchResult; an empty container gives -inf and no witness

    Raises:
        SearchSpaceTooLarge: exhaustive enumeration above its bounds
        InvalidInputError: bad mode, k, or a container that is not
            downward closed and symmetric
    """
    if k <= 0.0:
        raise InvalidInputError("k", k, "must be positive")
    if mode not in ("exhaustive", "local"):
        raise InvalidInputError("mode", mode, "must be 'exhaustive' or 'local'")
    _check_container(container)

    slack = slack_bound(container)
    if container.is_empty():
        return SearchResult(
            best_deficiency=-math.inf,
            witness=None,
            mode=mode,
            k=k,
            candidates=0,
            slack_bound=slack,
            note="no nonempty sub-body",
        )

    with logger.track_operation(
        "deficiency_search", mode=mode, dim=container.dim, grid=container.grid
    ) as meta:
        history: List[float] = []
        if mode == "exhaustive":
            best, evaluated = _exhaustive(container, k)
        else:
            best, evaluated, history = _local(container, k)
        meta["candidates"] = evaluated

    if best is None:
        return SearchResult(-math.inf, None, mode, k, evaluated, slack, note="no nonempty sub-body")
    witness = VoxelBody(best[3], container.cell_size)
    return SearchResult(
        best_deficiency=best[0],
        witness=witness,
        mode=mode,
        k=k,
        candidates=evaluated,
        slack_bound=slack,
        note="local maximum" if mode == "local" else "maximum over the family",
        history=history,
    )
