"""Tests for the compaction map."""

import numpy as np
import pytest

from sja_auction.geometry import VoxelBody, compact_chi
from tests.helpers.builders import random_body, staircase_body

BODIES_PER_DIM = 200


def _random_bodies(rng, dim):
    grid = {2: 6, 3: 4, 4: 3}[dim]
    return [random_body(rng, dim, grid, density=rng.uniform(0.1, 0.9)) for _ in range(BODIES_PER_DIM)]


@pytest.mark.parametrize("dim", [2, 3, 4])
class TestCompactionProperties:
    """Properties that hold on every body."""

    def test_volume_preserved(self, rng, dim):
        """Test |chi(A)| = |A|."""
        for body in _random_bodies(rng, dim):
            assert compact_chi(body).count == body.count

    def test_projections_do_not_grow(self, rng, dim):
        """Test every coordinate projection shrinks or stays."""
        for body in _random_bodies(rng, dim):
            compacted = compact_chi(body)
            for axis in range(dim):
                assert compacted.projection_count(axis) <= body.projection_count(axis)

    def test_result_is_downward_closed(self, rng, dim):
        """Test chi(A) is downward closed."""
        for body in _random_bodies(rng, dim):
            assert compact_chi(body).is_downward_closed()

    def test_idempotent(self, rng, dim):
        """Test chi(chi(A)) = chi(A)."""
        for body in _random_bodies(rng, dim):
            once = compact_chi(body)
            assert np.array_equal(compact_chi(once).occupancy, once.occupancy)

    def test_inclusion_monotone(self, rng, dim):
        """Test B subset of A gives chi(B) subset of chi(A)."""
        for body in _random_bodies(rng, dim):
            keep = rng.random(body.occupancy.shape) < 0.6
            sub = VoxelBody(body.occupancy & keep, body.cell_size)
            assert compact_chi(sub).issubset(compact_chi(body))


class TestCompactionExamples:
    """Small hand-checked cases."""

    def test_one_dimensional_run(self):
        """Test a 1D body becomes the initial run of the same length."""
        body = VoxelBody(np.array([False, True, False, True, True]), 1.0)
        assert compact_chi(body).occupancy.tolist() == [True, True, True, False, False]

    def test_closed_body_is_fixed(self, square_staircase):
        """Test downward-closed bodies are fixed points."""
        assert np.array_equal(compact_chi(square_staircase).occupancy, square_staircase.occupancy)

    def test_scattered_cells(self):
        """Test two scattered cells compact to the first two cells of column 0."""
        body = VoxelBody.empty(2, 4, 0.5)
        body.occupancy[3, 1] = True
        body.occupancy[1, 2] = True
        compacted = compact_chi(body)
        assert np.array_equal(compacted.occupancy, staircase_body([1, 1], grid=4, cell_size=0.5).occupancy)
        assert compacted.cell_size == 0.5

    def test_empty_body(self):
        """Test the empty body stays empty."""
        assert compact_chi(VoxelBody.empty(3, 3, 1.0)).is_empty()
