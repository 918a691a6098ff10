"""
Deficiency of the selling region split over allocation regions.

The selling region V projects onto the full unit cube along every axis, so
its k-deficiency is |V| - k*m. Split by the bought bundle, each region of a
size-r bundle contributes the deficiency of its inside factor, a scaled SIM
body, weighted by the no-sale volume of its outside factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional

import numpy as np

from ..config.constants import DEFAULT_SEED, SIGMA_MULTIPLIER
from ..geometry.sim import SimBody
from ..volumes import MonteCarloEstimate, mc_sale_probability, no_sale_volume, slice_volume
from .core import Mechanism
from .revenue import require_sja_shape

_AGREEMENT_TOL = 1e-9


@dataclass
class DecompositionTerm:
    """Contribution of every bundle of size r."""

    r: int
    bundles: int
    outside_factor: float
    inside_deficiency: float

    @property
    def contribution(self) -> float:
        return self.bundles * self.outside_factor * self.inside_deficiency

    def to_dict(self) -> Dict[str, float]:
        return {
            "r": self.r,
            "bundles": self.bundles,
            "outside_factor": self.outside_factor,
            "inside_deficiency": self.inside_deficiency,
            "contribution": self.contribution,
        }


@dataclass
class DecompositionReport:
    m: int
    k: float
    lhs_exact: float
    lhs_mc: Optional[MonteCarloEstimate]
    terms: List[DecompositionTerm] = field(default_factory=list)

    @property
    def rhs(self) -> float:
        return float(sum(term.contribution for term in self.terms))

    @property
    def exact_agrees(self) -> bool:
        return abs(self.lhs_exact - self.rhs) <= _AGREEMENT_TOL

    @property
    def mc_agrees(self) -> bool:
        if self.lhs_mc is None:
            return True
        # |V| is sampled; shift the target by k*m to compare on the volume scale
        return self.lhs_mc.within(self.rhs + self.k * self.m, SIGMA_MULTIPLIER)

    @property
    def passed(self) -> bool:
        return self.exact_agrees and self.mc_agrees

    def to_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "k": self.k,
            "lhs_exact": self.lhs_exact,
            "lhs_mc": (
                self.lhs_mc.estimate - self.k * self.m if self.lhs_mc is not None else None
            ),
            "lhs_mc_stderr": self.lhs_mc.stderr if self.lhs_mc is not None else None,
            "rhs": self.rhs,
            "terms": [term.to_dict() for term in self.terms],
            "passed": self.passed,
        }


def deficiency_decomposition(
    mech: Mechanism, samples: int = 0, seed: int = DEFAULT_SEED
) -> DecompositionReport:
    """
    Compare delta_k(V) with the sum of per-region slice deficiencies.

    Args:
        mech: SJA-shaped mechanism
        samples: Monte-Carlo draws for |V|; 0 skips the sampled side
        seed: sampling seed
    """
    require_sja_shape(mech)
    m = mech.m
    k = mech.profile.k
    prices = mech.prices
    lam = mech.profile.lambdas

    lhs_exact = slice_volume(prices) - k * m
    lhs_mc = mc_sale_probability(prices, samples=samples, seed=seed) if samples > 0 else None

    terms: List[DecompositionTerm] = []
    for r in range(1, m + 1):
        body = SimBody(alphas=list(lam[:r]))
        outside = 1.0
        if r < m:
            outside = no_sale_volume(np.clip(prices[r:] - prices[r - 1], 0.0, None))
        # delta_k(k * Lambda) = k^r * delta_1(Lambda)
        inside = k**r * body.deficiency(1.0)
        terms.append(
            DecompositionTerm(
                r=r,
                bundles=comb(m, r),
                outside_factor=outside,
                inside_deficiency=inside,
            )
        )
    return DecompositionReport(m=m, k=k, lhs_exact=lhs_exact, lhs_mc=lhs_mc, terms=terms)
