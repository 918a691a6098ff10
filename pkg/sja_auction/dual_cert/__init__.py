"""Lattice dual certificates: bipartite matching, grid colorings and complementarity checks."""

from .certify import CONDITIONS, TIE_BREAK, DualCertificate, Residual, certify
from .coloring import (
    DualObjective,
    GridColoring,
    coloring_from_matching,
    dual_objective,
    perturb_coloring,
)
from .export import coloring_csv, coloring_header, coloring_rows
from .graph import HallSpotcheck, MatchingGraph, build_matching_graph, hall_spotcheck, line_index
from .grid import CertGrid, Probes, probe_mechanism
from .matching import Matching, double_saturating_matching
from .schema import (
    CERTIFICATE_SCHEMA,
    certificate_errors,
    certificate_to_json,
    validate_certificate,
)

__all__ = [
    "CertGrid",
    "Probes",
    "probe_mechanism",
    "MatchingGraph",
    "build_matching_graph",
    "line_index",
    "hall_spotcheck",
    "HallSpotcheck",
    "Matching",
    "double_saturating_matching",
    "GridColoring",
    "DualObjective",
    "coloring_from_matching",
    "dual_objective",
    "perturb_coloring",
    "DualCertificate",
    "Residual",
    "certify",
    "CONDITIONS",
    "TIE_BREAK",
    "CERTIFICATE_SCHEMA",
    "certificate_errors",
    "certificate_to_json",
    "validate_certificate",
    "coloring_rows",
    "coloring_header",
    "coloring_csv",
]
