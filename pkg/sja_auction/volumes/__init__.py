"""Sell-at-least-one volumes: exact recursion, Monte-Carlo oracle, defining polynomials."""

from .exact import duplicate_normalize, is_nice, nice_volumes, no_sale_volume, slice_volume
from .monte_carlo import MonteCarloEstimate, estimate_mean, mc_sale_probability
from .polynomials import defining_polynomial, defining_root, polynomial_residual, real_roots

__all__ = [
    "slice_volume",
    "no_sale_volume",
    "nice_volumes",
    "duplicate_normalize",
    "is_nice",
    "mc_sale_probability",
    "estimate_mean",
    "MonteCarloEstimate",
    "defining_polynomial",
    "defining_root",
    "polynomial_residual",
    "real_roots",
]
