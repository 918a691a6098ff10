"""
SJA toolkit - Straight-Jacket Auction pricing and revenue-optimality certificates.

This package computes and checks the optimal deterministic mechanism for
one additive buyer with m independent uniform [0,1] item values:

- Sell-at-least-one volumes (exact recursion and Monte-Carlo oracle)
- SJA bundle prices from the slice conditions, with normalization
- SIM bodies, voxel bodies and deficiency search
- The menu mechanism, its regions and expected revenue
- Lattice dual certificates via bipartite matching
- Single-item duality demos for regular and non-regular distributions
"""

__version__ = "0.1.0"

from .distributions import Density1D, myerson_dual, nonregular_demo, regularity_check
from .dual_cert import CertGrid, DualCertificate, certify
from .errors import SJAError
from .geometry import SimBody, VoxelBody, deficiency_search
from .mechanism import Mechanism, evaluate, expected_revenue
from .models import PriceProfile, PriceSeq
from .pricing import normalize, solve_prices, verify_slice_conditions
from .volumes import mc_sale_probability, slice_volume

__all__ = [
    # Volumes
    "slice_volume",
    "mc_sale_probability",
    # Pricing
    "solve_prices",
    "normalize",
    "verify_slice_conditions",
    "PriceProfile",
    "PriceSeq",
    # Geometry
    "SimBody",
    "VoxelBody",
    "deficiency_search",
    # Mechanism
    "Mechanism",
    "evaluate",
    "expected_revenue",
    # Dual certificates
    "CertGrid",
    "DualCertificate",
    "certify",
    # Distributions
    "Density1D",
    "regularity_check",
    "myerson_dual",
    "nonregular_demo",
    # Errors
    "SJAError",
]
