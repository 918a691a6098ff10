"""SIM bodies, voxel bodies, compaction and deficiency search."""

from .checks import (
    PClosureReport,
    StructureReport,
    loomis_whitney_holds,
    p_closure_spotcheck,
    slice_projection_commutes,
    structure_checks,
    supermodularity_holds,
)
from .chi import compact_chi
from .search import SearchResult, deficiency_search, slack_bound
from .sim import (
    SimBody,
    in_permutation_hull,
    sim_deficiency,
    sim_membership,
    sim_volume,
)
from .voxel import VoxelBody, boundary_cell_count, decode_rle, encode_rle, voxelize


def deficiency(body, k: float) -> float:
    """k-deficiency of a SimBody or a VoxelBody."""
    return body.deficiency(k)


__all__ = [
    "SimBody",
    "sim_membership",
    "sim_volume",
    "sim_deficiency",
    "in_permutation_hull",
    "VoxelBody",
    "voxelize",
    "boundary_cell_count",
    "encode_rle",
    "decode_rle",
    "deficiency",
    "compact_chi",
    "deficiency_search",
    "SearchResult",
    "slack_bound",
    "structure_checks",
    "StructureReport",
    "loomis_whitney_holds",
    "supermodularity_holds",
    "slice_projection_commutes",
    "p_closure_spotcheck",
    "PClosureReport",
]
