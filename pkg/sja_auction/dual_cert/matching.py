"""
A matching that saturates every covered cell and every row of B at once.

Two maximum matchings are computed with Hopcroft-Karp: M1 over all right
nodes, which must saturate the cells, and M2 over B only, which must
saturate B. In M1 u M2 every node has degree at most two, so the union
splits into alternating paths and cycles. Cycles and paths keep M1 unless
an endpoint is a B row reached only by M2; those paths switch to M2. Along
such a path the far endpoint is a B* row, so nothing required is lost.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from ..errors import HallViolation, SJAError
from ..observability import ComputationLogger
from .graph import MatchingGraph

logger = ComputationLogger("dual_cert")


@dataclass
class Matching:
    """``cell_to_column[i]`` is the right node of covered cell i."""

    graph: MatchingGraph
    cell_to_column: np.ndarray
    components: int = 0
    switched: int = 0

    def to_dict(self) -> Dict[str, int]:
        return {
            "cells": int(self.cell_to_column.size),
            "components": self.components,
            "switched_components": self.switched,
        }


def _hall_witness(
    adjacency: csr_matrix, left_mate: np.ndarray, start: int
) -> Tuple[List[int], List[int]]:
    """
    Left nodes reachable from an unmatched ``start`` by alternating paths,
    and their neighbours. Under a maximum matching the neighbourhood has
    exactly one node fewer than the set.
    """
    right_mate = np.full(adjacency.shape[1], -1, dtype=np.int64)
    matched = np.flatnonzero(left_mate >= 0)
    right_mate[left_mate[matched]] = matched

    seen_left: Set[int] = {start}
    seen_right: Set[int] = set()
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for col in adjacency.indices[adjacency.indptr[node] : adjacency.indptr[node + 1]]:
            col = int(col)
            if col in seen_right:
                continue
            seen_right.add(col)
            mate = int(right_mate[col])
            if mate >= 0 and mate not in seen_left:
                seen_left.add(mate)
                queue.append(mate)
    return sorted(seen_left), sorted(seen_right)


def _saturating(adjacency: csr_matrix, side: str, labels: np.ndarray) -> np.ndarray:
    """Maximum matching of the rows of ``adjacency``; every row must be matched."""
    mate = np.asarray(maximum_bipartite_matching(adjacency, perm_type="column"), dtype=np.int64)
    unmatched = np.flatnonzero(mate < 0)
    if unmatched.size:
        witness, neighbours = _hall_witness(adjacency, mate, int(unmatched[0]))
        logger.error(
            "maximum matching is not saturating",
            side=side,
            unmatched=int(unmatched.size),
            witness=len(witness),
        )
        raise HallViolation(
            side,
            [int(labels[i]) for i in witness],
            neighbours,
        )
    return mate


def double_saturating_matching(graph: MatchingGraph) -> Matching:
    """
    Combine a cell-saturating and a B-saturating matching.

    Raises:
        HallViolation: either maximum matching falls short; the witness lists
            cell indices (side ``cover``) or B column ids (side ``B``)
    """
    n_left = graph.n_left
    n_right = graph.n_right
    with logger.track_operation("double_saturating_matching", left=n_left, right=n_right) as meta:
        m1 = _saturating(graph.biadjacency, "cover", np.arange(n_left))

        b_cols = graph.boundary_columns()
        to_b = csr_matrix(graph.biadjacency[:, b_cols].T)
        b_mate = _saturating(to_b, "B", b_cols)

        m2 = np.full(n_left, -1, dtype=np.int64)
        m2[b_mate] = b_cols
        right_m1 = np.full(n_right, -1, dtype=np.int64)
        right_m1[m1] = np.arange(n_left)
        right_m2 = np.full(n_right, -1, dtype=np.int64)
        right_m2[b_cols] = b_mate

        final = m1.copy()
        visited = np.zeros(n_left, dtype=bool)
        components = 0
        switched = 0
        for seed in range(n_left):
            if visited[seed]:
                continue
            components += 1
            lefts: List[int] = []
            endpoint_without_m1 = False
            is_cycle = True
            queue = deque([seed])
            visited[seed] = True
            while queue:
                x = queue.popleft()
                lefts.append(x)
                if m2[x] < 0:
                    is_cycle = False
                for col in (m1[x], m2[x]):
                    if col < 0:
                        continue
                    partners = [int(right_m1[col]), int(right_m2[col])]
                    if min(partners) < 0:
                        is_cycle = False
                        if right_m1[col] < 0:
                            endpoint_without_m1 = True
                    for y in partners:
                        if y >= 0 and not visited[y]:
                            visited[y] = True
                            queue.append(y)
            if not is_cycle and endpoint_without_m1:
                switched += 1
                for x in lefts:
                    final[x] = m2[x]

        if np.any(final < 0) or np.unique(final).size != final.size:
            raise SJAError("combined matching is not a saturating matching")
        used = np.zeros(n_right, dtype=bool)
        used[final] = True
        if not used[b_cols].all():
            raise SJAError("combined matching leaves a B row unmatched")
        meta["components"] = components
        meta["switched"] = switched
    return Matching(graph=graph, cell_to_column=final, components=components, switched=switched)
