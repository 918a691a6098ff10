"""Tests for SIM bodies."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from sja_auction.errors import InvalidInputError
from sja_auction.geometry import (
    SimBody,
    deficiency,
    in_permutation_hull,
    sim_deficiency,
    sim_membership,
    sim_volume,
)
from sja_auction.pricing import solve_normalized

SQRT2 = math.sqrt(2.0)


class TestSimBodyModel:
    """Validation and derived bodies."""

    def test_rejects_decreasing_alphas(self):
        """Test alphas must be non-decreasing."""
        with pytest.raises(ValidationError):
            SimBody(alphas=[2.0, 1.0])

    def test_rejects_non_positive_alpha(self):
        """Test alphas must be positive."""
        with pytest.raises(ValidationError):
            SimBody(alphas=[0.0, 1.0])

    def test_rejects_non_positive_scale(self):
        """Test the scale must be positive."""
        with pytest.raises(ValidationError):
            SimBody(alphas=[1.0], scale=0.0)

    def test_tail_sums(self):
        """Test T_j sums the j largest alphas."""
        body = SimBody(alphas=[1.0, 2.0, 4.0], scale=0.5)
        np.testing.assert_allclose(body.tail_sums(), [2.0, 3.0, 3.5])

    def test_projection_and_slice(self):
        """Test projection drops a_1 and the top slice drops a_r."""
        body = SimBody(alphas=[1.0, 2.0, 3.0])
        assert body.projection().alphas == [2.0, 3.0]
        assert body.top_slice().alphas == [1.0, 2.0]

    def test_one_dimensional_has_no_projection(self):
        """Test r = 1 bodies cannot be projected or sliced."""
        body = SimBody(alphas=[1.0])
        with pytest.raises(InvalidInputError):
            body.projection()
        with pytest.raises(InvalidInputError):
            body.top_slice()
        assert body.projection_volume() == 1.0


class TestMembership:
    """Subset-sum membership."""

    def test_corner_of_golden_body(self):
        """Test the extreme point (1 + sqrt 2, 1) lies in Lambda(1, 1 + sqrt 2)."""
        body = SimBody(alphas=[1.0, 1.0 + SQRT2])
        assert sim_membership(body, [1.0 + SQRT2, 1.0])
        assert sim_membership(body, [1.0, 1.0 + SQRT2])

    def test_outside_points(self):
        """Test single coordinates and sums are both bounded."""
        body = SimBody(alphas=[1.0, 2.0])
        assert not body.contains([2.1, 0.0])
        assert not body.contains([1.6, 1.6])
        assert body.contains([1.5, 1.5])

    def test_scaled_membership(self):
        """Test the scale multiplies every bound."""
        body = SimBody(alphas=[1.0, 2.0], scale=0.5)
        assert body.contains([1.0, 0.5])
        assert not body.contains([1.1, 0.0])

    def test_wrong_dimension(self):
        """Test the coordinate count must match r."""
        with pytest.raises(InvalidInputError):
            SimBody(alphas=[1.0, 2.0]).contains([0.5])

    def test_negative_coordinates(self):
        """Test negative coordinates are rejected."""
        with pytest.raises(InvalidInputError):
            SimBody(alphas=[1.0, 2.0]).contains([-0.1, 0.5])

    def test_permutation_hull_agrees(self, rng):
        """Test the body is the set below the permutohedron of its alphas."""
        body = SimBody(alphas=[0.5, 1.0, 2.0])
        points = rng.uniform(0.0, 2.2, size=(40, 3))
        for x in points:
            assert in_permutation_hull(body, x) == body.contains(x)

    def test_permutation_hull_rejects_negative(self):
        """Test negative points are outside the hull."""
        assert not in_permutation_hull(SimBody(alphas=[1.0, 2.0]), [-0.1, 0.0])


class TestVolume:
    """Exact volumes."""

    def test_interval(self):
        """Test Lambda(a) is [0, a]."""
        assert sim_volume(SimBody(alphas=[1.5])) == pytest.approx(1.5)

    def test_square(self):
        """Test Lambda(1, 1) is the unit square."""
        assert sim_volume(SimBody(alphas=[1.0, 1.0])) == pytest.approx(1.0)

    def test_cut_square(self):
        """Test Lambda(1, 2) is the 2x2 square minus a corner triangle."""
        assert sim_volume(SimBody(alphas=[1.0, 2.0])) == pytest.approx(3.5, abs=1e-12)

    def test_golden_body(self):
        """Test |Lambda(1, 1 + sqrt 2)| = 2 + 2 sqrt 2."""
        body = SimBody(alphas=[1.0, 1.0 + SQRT2])
        assert body.volume() == pytest.approx(2.0 + 2.0 * SQRT2, abs=1e-10)

    def test_volume_scales(self):
        """Test |q Lambda| = q^r |Lambda|."""
        body = SimBody(alphas=[1.0, 2.0, 2.5])
        assert body.scaled(0.5).volume() == pytest.approx(body.volume() / 8.0, rel=1e-10)

    def test_volume_against_sampling(self, rng):
        """Test the exact volume against the hit rate of the bounding box."""
        body = SimBody(alphas=[1.0, 2.0, 2.5])
        points = rng.uniform(0.0, body.width(), size=(200_000, 3))
        hits = body.contains_many(points).mean()
        estimate = hits * body.width() ** 3
        stderr = math.sqrt(hits * (1.0 - hits) / points.shape[0]) * body.width() ** 3
        assert abs(estimate - body.volume()) <= 4.0 * stderr


class TestDeficiency:
    """Deficiencies of the lambda bodies."""

    def test_golden_body_zero(self):
        """Test delta_1(Lambda(1, 1 + sqrt 2)) = 0."""
        body = SimBody(alphas=[1.0, 1.0 + SQRT2])
        assert sim_deficiency(body, 1.0) == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
    def test_lambda_bodies_have_zero_deficiency(self, m):
        """Test delta_1(Lambda(lambda_1..lambda_r)) = 0 where the order-r region is nonempty."""
        profile = solve_normalized(m)
        lambdas = profile.lambdas
        for r in range(1, m + 1):
            if r < m and profile.p[r] - profile.p[r - 1] <= 1e-12:
                continue
            body = SimBody(alphas=list(lambdas[:r]))
            assert deficiency(body, 1.0) == pytest.approx(0.0, abs=1e-6)

    @pytest.mark.parametrize("m, r", [(5, 4), (6, 5)])
    def test_collapsed_order_has_no_region(self, m, r):
        """Test normalization merges p_r into p_{r+1} where the identity is skipped."""
        profile = solve_normalized(m)
        assert profile.p[r] == pytest.approx(profile.p[r - 1], abs=1e-12)

    @pytest.mark.parametrize("q", [1.0 / 3.0, 0.5, 2.0])
    def test_scaling_law(self, q):
        """Test delta_{qk}(q Lambda) = q^r delta_k(Lambda)."""
        body = SimBody(alphas=[1.0, 2.0, 2.5])
        k = 0.7
        lhs = body.scaled(q).deficiency(q * k)
        rhs = q**body.r * body.deficiency(k)
        assert lhs == pytest.approx(rhs, abs=1e-8)

    def test_rejects_non_positive_k(self):
        """Test k must be positive."""
        with pytest.raises(InvalidInputError):
            sim_deficiency(SimBody(alphas=[1.0]), 0.0)
