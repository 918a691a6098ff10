"""
Compaction of a voxel body into a downward-closed one.

In one dimension the body becomes the initial run of the same length. In d
dimensions every slice fixing coordinate 0 is compacted recursively, then
every slice fixing coordinate 1. The first pass leaves the body closed in
all coordinates except 0, the second closes coordinate 0 as well without
undoing the rest. Volume is preserved, no projection grows, inclusion is
monotone and downward-closed bodies are fixed points.
"""

from __future__ import annotations

import numpy as np

from .voxel import VoxelBody


def _compact_line(occ: np.ndarray) -> np.ndarray:
    return np.arange(occ.size) < int(occ.sum())


def _compact_slices(occ: np.ndarray, axis: int) -> np.ndarray:
    slices = [_chi(np.take(occ, t, axis=axis)) for t in range(occ.shape[axis])]
    return np.stack(slices, axis=axis)


def _chi(occ: np.ndarray) -> np.ndarray:
    if occ.ndim == 1:
        return _compact_line(occ)
    return _compact_slices(_compact_slices(occ, axis=0), axis=1)


def compact_chi(body: VoxelBody) -> VoxelBody:
    """Downward-closed body with the same volume and no larger projections."""
    return VoxelBody(_chi(body.occupancy), body.cell_size)
