"""Tests for exact sell-at-least-one volumes."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sja_auction.errors import InvalidInputError, RecursionDepthError
from sja_auction.volumes import (
    duplicate_normalize,
    is_nice,
    nice_volumes,
    no_sale_volume,
    slice_volume,
)
from sja_auction.volumes.exact import _chamber_no_sale_volume
from tests.helpers.builders import nice_prices


class TestSliceVolumeValues:
    """Known closed-form volumes."""

    @pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.9, 1.0])
    def test_single_item(self, p):
        """Test v(p) = 1 - p for one item."""
        assert slice_volume([p]) == pytest.approx(1.0 - p, abs=1e-15)

    def test_two_items_half_and_one(self):
        """Test v(0.5, 1.0) = 3/4."""
        assert slice_volume([0.5, 1.0]) == pytest.approx(0.75, abs=1e-12)

    def test_two_items_one_and_one(self):
        """Test v(1, 1) = 1/2: only the sum constraint binds."""
        assert slice_volume([1.0, 1.0]) == pytest.approx(0.5, abs=1e-12)

    def test_three_items_simplex(self):
        """Test v(1, 1, 1) = 1 - 1/6."""
        assert slice_volume([1.0, 1.0, 1.0]) == pytest.approx(5.0 / 6.0, abs=1e-12)

    def test_two_item_sja_prices(self, two_item_prices):
        """Test the closed-form m=2 prices hit 1/3 and 2/3."""
        assert slice_volume(two_item_prices[:1]) == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert slice_volume(two_item_prices) == pytest.approx(2.0 / 3.0, abs=1e-10)

    def test_non_nice_sequence(self):
        """Test increasing differences go through the chamber volume."""
        # no sale needs max < 0.2, the sum bound 1.5 never binds
        assert not is_nice([0.2, 1.5])
        assert slice_volume([0.2, 1.5]) == pytest.approx(1.0 - 0.04, abs=1e-9)

    def test_duplicate_rule_applied(self):
        """Test p_1 above p_2 is lowered before evaluation."""
        assert slice_volume([1.5, 1.0]) == pytest.approx(slice_volume([1.0, 1.0]), abs=1e-12)

    def test_zero_prices_always_sell(self):
        """Test all-zero prices sell everywhere."""
        assert slice_volume([0.0, 0.0, 0.0]) == pytest.approx(1.0)

    def test_no_sale_complement(self):
        """Test no_sale_volume is the complement."""
        assert no_sale_volume([0.5, 1.0]) == pytest.approx(0.25, abs=1e-12)


class TestSliceVolumeValidation:
    """Input checking."""

    def test_empty_sequence(self):
        """Test an empty price list is rejected."""
        with pytest.raises(InvalidInputError):
            slice_volume([])

    def test_price_above_r(self):
        """Test p_s > r is rejected."""
        with pytest.raises(InvalidInputError):
            slice_volume([0.5, 2.5])

    def test_negative_price(self):
        """Test negative prices are rejected."""
        with pytest.raises(InvalidInputError):
            slice_volume([-0.1])

    def test_non_finite(self):
        """Test NaN prices are rejected."""
        with pytest.raises(InvalidInputError):
            slice_volume([math.nan, 1.0])

    def test_recursion_cap(self):
        """Test orders above the cap raise RecursionDepthError."""
        with pytest.raises(RecursionDepthError):
            slice_volume([0.5] * 9)

    def test_custom_cap(self):
        """Test the cap is configurable."""
        with pytest.raises(RecursionDepthError):
            slice_volume([0.5, 1.0, 1.5], max_order=2)


class TestNormalizationHelpers:
    """Duplication rule and the nice-sequence predicate."""

    def test_duplicate_normalize_top_down(self):
        """Test lowering cascades from the top."""
        result = duplicate_normalize([0.9, 1.2, 0.8])
        np.testing.assert_allclose(result, [0.8, 0.8, 0.8])

    def test_duplicate_normalize_keeps_monotone(self):
        """Test monotone sequences are unchanged."""
        np.testing.assert_allclose(duplicate_normalize([0.5, 1.0, 1.2]), [0.5, 1.0, 1.2])

    def test_is_nice(self):
        """Test the nice predicate."""
        assert is_nice([0.5, 0.9, 1.2])
        assert not is_nice([1.2, 1.5])
        assert not is_nice([0.3, 0.5, 1.0])


class TestVolumeProperties:
    """Structural properties of v."""

    @settings(max_examples=40, deadline=None)
    @given(
        p=st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=1, max_size=3),
        bump=st.floats(min_value=0.0, max_value=0.5),
    )
    def test_non_increasing_in_last_price(self, p, bump):
        """Test raising the top price never increases the sale volume."""
        prices = sorted(p)
        higher = prices[:-1] + [min(prices[-1] + bump, float(len(prices)))]
        assert slice_volume(higher) <= slice_volume(prices) + 1e-9

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10_000), r=st.integers(min_value=2, max_value=3))
    def test_recursion_agrees_with_chamber(self, seed, r):
        """Test the slice recursion and the chamber polytope give the same volume."""
        prices = nice_prices(np.random.default_rng(seed), r)
        recursive = slice_volume(prices)
        chamber = 1.0 - _chamber_no_sale_volume(np.asarray(prices))
        assert recursive == pytest.approx(chamber, abs=1e-8)

    def test_nice_volumes_batch(self, rng):
        """Test the batch evaluator matches one-at-a-time evaluation."""
        rows = np.stack([nice_prices(rng, 3) for _ in range(5)])
        batch = nice_volumes(rows)
        single = [slice_volume(row) for row in rows]
        np.testing.assert_allclose(batch, single, atol=1e-12)
