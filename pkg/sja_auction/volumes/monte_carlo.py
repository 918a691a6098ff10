"""
Seeded Monte-Carlo estimation over the unit cube.

Samples are split into fixed-size chunks. Chunk i draws from its own child
of ``numpy.random.SeedSequence(seed)``, so the estimate depends only on
(seed, samples, chunk_size) and never on how many workers ran the chunks.
Partial sums are reduced in chunk order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import get_settings
from ..errors import InvalidInputError
from .exact import validate_prices

Kernel = Callable[[np.ndarray], np.ndarray]


@dataclass
class MonteCarloEstimate:
    """Mean of a kernel over uniform samples with its standard error."""

    estimate: float
    stderr: float
    samples: int
    seed: int

    def within(self, value: float, sigmas: float) -> bool:
        """True when ``value`` lies within ``sigmas`` standard errors of the estimate."""
        slack = sigmas * self.stderr
        # zero-variance estimates still get rounding room
        return abs(self.estimate - value) <= max(slack, 1e-12)

    def to_dict(self) -> Dict[str, float]:
        return {
            "estimate": self.estimate,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
        }


def _chunk_sizes(samples: int, chunk_size: int) -> List[int]:
    full, rest = divmod(samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def estimate_mean(
    kernel: Kernel,
    dim: int,
    samples: int,
    seed: int,
    chunk_size: Optional[int] = None,
    threads: Optional[int] = None,
) -> MonteCarloEstimate:
    """
    Estimate E[kernel(X)] for X uniform on [0,1]^dim.

    Args:
        kernel: maps an (n, dim) sample block to n values
        dim: sample dimension
        samples: total number of samples
        seed: root seed
        chunk_size: samples per chunk (defaults to settings)
        threads: worker cap (defaults to SJA_THREADS)

    Returns:
        MonteCarloEstimate with population-variance standard error
    """
    if samples < 1:
        raise InvalidInputError("samples", samples, "must be at least 1")
    settings = get_settings()
    chunk_size = chunk_size or settings.chunk_size
    threads = threads or settings.threads

    sizes = _chunk_sizes(samples, chunk_size)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(index: int) -> Tuple[float, float]:
        rng = np.random.default_rng(children[index])
        values = np.asarray(kernel(rng.random((sizes[index], dim))), dtype=float)
        return float(values.sum()), float(np.square(values).sum())

    if threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(run, range(len(sizes))))
    else:
        partials = [run(i) for i in range(len(sizes))]

    total = 0.0
    total_sq = 0.0
    for s, sq in partials:
        total += s
        total_sq += sq

    mean = total / samples
    variance = max(total_sq / samples - mean * mean, 0.0)
    return MonteCarloEstimate(
        estimate=mean,
        stderr=math.sqrt(variance / samples),
        samples=samples,
        seed=seed,
    )


def sells_kernel(prices: Sequence[float]) -> Kernel:
    """Kernel returning 1.0 where at least one of the r items sells."""
    thresholds = np.asarray(prices, dtype=float)

    def kernel(u: np.ndarray) -> np.ndarray:
        ranked = -np.sort(-u, axis=1)
        prefix = np.cumsum(ranked, axis=1)
        return np.any(prefix >= thresholds[None, :], axis=1).astype(float)

    return kernel


def mc_sale_probability(
    prices: Sequence[float],
    samples: int,
    seed: int,
    chunk_size: Optional[int] = None,
    threads: Optional[int] = None,
) -> MonteCarloEstimate:
    """
    Monte-Carlo estimate of ``slice_volume(prices)``.

    A draw sells when some prefix sum of its descending-sorted coordinates
    reaches the matching price.
    """
    values = validate_prices(prices)
    return estimate_mean(
        sells_kernel(values),
        dim=values.size,
        samples=samples,
        seed=seed,
        chunk_size=chunk_size,
        threads=threads,
    )
