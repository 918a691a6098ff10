"""Sampled checks that a utility function comes from a truthful deterministic menu."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Union

import numpy as np

from ..config.constants import DEFAULT_SEED
from ..errors import InvalidInputError
from ..observability import ComputationLogger
from .core import Mechanism

logger = ComputationLogger("mechanism")

Utility = Callable[[np.ndarray], np.ndarray]

_TOL = 1e-9
# share of coordinate increments allowed to straddle an allocation boundary
_MIN_INTEGRAL_SHARE = 0.99


@dataclass
class TruthfulnessReport:
    samples: int
    seed: int
    delta: float
    individually_rational: bool
    convex: bool
    monotone: bool
    integral_share: float
    failures: List[str] = field(default_factory=list)

    @property
    def integral(self) -> bool:
        return self.integral_share >= _MIN_INTEGRAL_SHARE

    @property
    def passed(self) -> bool:
        return self.individually_rational and self.convex and self.monotone and self.integral

    def to_dict(self) -> Dict[str, object]:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "delta": self.delta,
            "individually_rational": self.individually_rational,
            "convex": self.convex,
            "monotone": self.monotone,
            "integral_share": self.integral_share,
            "passed": self.passed,
            "failures": self.failures,
        }


def truthfulness_spotcheck(
    subject: Union[Mechanism, Utility],
    samples: int = 100_000,
    seed: int = DEFAULT_SEED,
    items: Optional[int] = None,
    delta: float = 1e-3,
) -> TruthfulnessReport:
    """
    Check IR, midpoint convexity and coordinate increments of a utility.

    Args:
        subject: a Mechanism, or a vectorised utility ``u(points) -> values``
        samples: random points (and random pairs) to test
        seed: sampling seed
        items: dimension, required when ``subject`` is a bare utility
        delta: coordinate step for the increment checks

    Returns:
        TruthfulnessReport. Increments must lie in [0, delta]; for a
        deterministic menu they are 0 or delta except where the step crosses
        an allocation boundary.
    """
    if isinstance(subject, Mechanism):
        utility: Utility = subject.utility
        m = subject.m
    else:
        if items is None:
            raise InvalidInputError("items", items, "required for a bare utility function")
        utility = subject
        m = items
    if samples < 1:
        raise InvalidInputError("samples", samples, "must be at least 1")

    rng = np.random.default_rng(seed)
    failures: List[str] = []
    with logger.track_operation("truthfulness_spotcheck", m=m, samples=samples):
        x = rng.random((samples, m))
        y = rng.random((samples, m))
        ux = np.asarray(utility(x), dtype=float)
        uy = np.asarray(utility(y), dtype=float)

        ir = bool(np.all(ux >= -_TOL))
        if not ir:
            failures.append("individual_rationality")

        mid = np.asarray(utility(0.5 * (x + y)), dtype=float)
        convex = bool(np.all(mid <= 0.5 * (ux + uy) + _TOL))
        if not convex:
            failures.append("convexity")

        base = x * (1.0 - delta)
        ub = np.asarray(utility(base), dtype=float)
        increments = []
        for j in range(m):
            stepped = base.copy()
            stepped[:, j] += delta
            increments.append(np.asarray(utility(stepped), dtype=float) - ub)
        inc = np.concatenate(increments)
        monotone = bool(np.all(inc >= -_TOL) and np.all(inc <= delta + _TOL))
        if not monotone:
            failures.append("monotone_increments")
        on_lattice = (np.abs(inc) <= _TOL) | (np.abs(inc - delta) <= _TOL)
        share = float(on_lattice.mean())
        if share < _MIN_INTEGRAL_SHARE:
            failures.append("integral_increments")

    return TruthfulnessReport(
        samples=samples,
        seed=seed,
        delta=delta,
        individually_rational=ir,
        convex=convex,
        monotone=monotone,
        integral_share=share,
        failures=failures,
    )
