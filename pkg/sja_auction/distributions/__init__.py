"""Single-item duality: regular reserve-price duals and the non-regular counterexample."""

from .density import (
    DISTRIBUTIONS,
    Density1D,
    RegularityReport,
    from_functions,
    get_distribution,
    nonregular_example,
    regularity_check,
    revenue_curve,
    uniform,
)
from .myerson import MyersonDual, myerson_dual, reserve_price
from .nonregular import (
    CURVE_COLUMNS,
    NonRegularReport,
    ironed_dual,
    nonregular_demo,
    relaxed_duals,
)

__all__ = [
    "Density1D",
    "uniform",
    "nonregular_example",
    "from_functions",
    "get_distribution",
    "DISTRIBUTIONS",
    "revenue_curve",
    "regularity_check",
    "RegularityReport",
    "myerson_dual",
    "reserve_price",
    "MyersonDual",
    "nonregular_demo",
    "NonRegularReport",
    "ironed_dual",
    "relaxed_duals",
    "CURVE_COLUMNS",
]
