"""SJA price solving, normalization and verification."""

from .solver import (
    lambda_table,
    mu_table,
    normalization_preserves_utility,
    normalize,
    solve_normalized,
    solve_prices,
)
from .verify import (
    PriceStructureReport,
    RootAgreement,
    SliceReport,
    SliceResidual,
    check_price_structure,
    polynomial_crosscheck,
    verify_slice_conditions,
)

__all__ = [
    "solve_prices",
    "normalize",
    "solve_normalized",
    "mu_table",
    "lambda_table",
    "normalization_preserves_utility",
    "verify_slice_conditions",
    "check_price_structure",
    "polynomial_crosscheck",
    "SliceReport",
    "SliceResidual",
    "PriceStructureReport",
    "RootAgreement",
]
