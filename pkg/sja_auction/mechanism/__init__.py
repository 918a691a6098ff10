"""The menu mechanism, its allocation regions, revenue and truthfulness checks."""

from .baselines import BaselineRevenue, grand_bundle_revenue, irwin_hall_cdf, separate_sale_revenue
from .core import Allocation, BatchAllocation, Mechanism, menu_utilities
from .decomposition import DecompositionReport, DecompositionTerm, deficiency_decomposition
from .revenue import (
    RevenueEstimate,
    expected_revenue,
    in_subdomain,
    size_class_table,
    size_class_volume,
    subdomain_volume,
)
from .truthfulness import TruthfulnessReport, truthfulness_spotcheck


def evaluate(mech: Mechanism, x) -> Allocation:
    """Utility, bundle and payment of ``mech`` at ``x``."""
    return mech.evaluate(x)


__all__ = [
    "Mechanism",
    "Allocation",
    "BatchAllocation",
    "menu_utilities",
    "evaluate",
    "expected_revenue",
    "RevenueEstimate",
    "subdomain_volume",
    "size_class_volume",
    "size_class_table",
    "in_subdomain",
    "truthfulness_spotcheck",
    "TruthfulnessReport",
    "deficiency_decomposition",
    "DecompositionReport",
    "DecompositionTerm",
    "grand_bundle_revenue",
    "separate_sale_revenue",
    "irwin_hall_cdf",
    "BaselineRevenue",
]
