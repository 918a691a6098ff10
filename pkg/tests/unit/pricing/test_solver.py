"""Tests for the SJA price solver and normalization."""

import math

import pytest

from sja_auction.errors import InvalidInputError, RecursionDepthError
from sja_auction.models import PriceProfile
from sja_auction.pricing import (
    lambda_table,
    mu_table,
    normalization_preserves_utility,
    normalize,
    solve_normalized,
    solve_prices,
)

TABLE_TOL = 5e-4


@pytest.fixture(scope="module")
def solved():
    """Unnormalized profiles for m = 1..6."""
    return {m: solve_prices(m) for m in range(1, 7)}


class TestSolvePrices:
    """Price regression against the published mu table."""

    def test_single_item(self, solved):
        """Test m = 1 prices at 1/2 with mu_1 = 1."""
        profile = solved[1]
        assert profile.p == [0.5]
        assert profile.mu[0] == pytest.approx(1.0, abs=1e-12)

    def test_first_price_closed_form(self, solved):
        """Test p_1 = m/(m+1) for every m."""
        for m, profile in solved.items():
            assert profile.p[0] == pytest.approx(m / (m + 1), abs=1e-15)

    def test_mu_two(self, solved):
        """Test mu_2 = 2 + sqrt(2) to 1e-9."""
        assert solved[2].mu[1] == pytest.approx(2.0 + math.sqrt(2.0), abs=1e-9)

    def test_two_item_price(self, solved, two_item_prices):
        """Test p_2 = (4 - sqrt(2))/3."""
        assert solved[2].p[1] == pytest.approx(two_item_prices[1], abs=1e-10)

    @pytest.mark.parametrize(
        "m,r,expected",
        [
            (3, 3, 7.0972),
            (4, 4, 11.9972),
            (5, 5, 18.0865),
            (6, 5, 18.0843),
            (6, 6, 25.3585),
        ],
    )
    def test_mu_table(self, solved, m, r, expected):
        """Test solved mu values against the table to 5e-4."""
        assert solved[m].mu[r - 1] == pytest.approx(expected, abs=TABLE_TOL)

    def test_mu_independent_of_items(self, solved):
        """Test the transformed prices mu_r do not depend on m before normalization."""
        for r in range(1, 5):
            values = [solved[m].mu[r - 1] for m in range(max(r, 1), 7)]
            assert max(values) - min(values) < 1e-7

    def test_mu_three_note(self, solved):
        """Test the rounding note for mu_3 is attached."""
        assert any("7.0972" in note for note in solved[3].notes)

    def test_conjectural_flag(self):
        """Test m > 6 is solved but flagged."""
        profile = solve_prices(7)
        assert profile.conjectural
        assert any("conjectural" in note for note in profile.notes)

    def test_rejects_zero_items(self):
        """Test m must be positive."""
        with pytest.raises(InvalidInputError):
            solve_prices(0)

    def test_rejects_non_positive_tol(self):
        """Test the tolerance must be positive."""
        with pytest.raises(InvalidInputError):
            solve_prices(2, tol=0.0)

    def test_recursion_cap(self):
        """Test m beyond the recursion cap raises."""
        with pytest.raises(RecursionDepthError):
            solve_prices(4, max_order=3)


class TestNormalize:
    """Collapsing dominated prices."""

    def test_small_m_unchanged(self, solved):
        """Test monotone profiles are left alone."""
        for m in (1, 2, 3, 4):
            normalized = normalize(solved[m])
            assert normalized.normalized
            assert normalized.p == solved[m].p

    def test_five_items(self, solved):
        """Test m = 5 collapses p_4 onto p_5, giving mu_4 = 12.0865."""
        normalized = normalize(solved[5])
        assert normalized.mu[3] == pytest.approx(12.0865, abs=TABLE_TOL)
        assert normalized.p[3] == normalized.p[4]
        assert normalized.solved_p == solved[5].p

    def test_six_items(self, solved):
        """Test m = 6 gives normalized mu_5 = 18.3585."""
        normalized = normalize(solved[6])
        assert normalized.mu[4] == pytest.approx(18.3585, abs=TABLE_TOL)
        assert any("lambda_6" in note for note in normalized.notes)

    @pytest.mark.parametrize("m", [2, 5, 6])
    def test_offered_prices_monotone(self, solved, m):
        """Test the offered menu is non-decreasing."""
        p = normalize(solved[m]).p
        assert all(b >= a - 1e-12 for a, b in zip(p, p[1:]))

    @pytest.mark.parametrize("m", [3, 5])
    def test_utility_preserved(self, solved, m):
        """Test normalization leaves the buyer's utility unchanged."""
        assert normalization_preserves_utility(normalize(solved[m]))


class TestTables:
    """Tabulated mu and lambda."""

    def test_mu_table_shape(self):
        """Test one row per m."""
        table = mu_table(3)
        assert [len(row) for row in table] == [1, 2, 3]
        assert table[1][1] == pytest.approx(2.0 + math.sqrt(2.0), abs=1e-9)

    def test_lambda_table(self):
        """Test lambda_1 = 1 and lambda_2 = 1 + sqrt(2)."""
        table = lambda_table(2)
        assert table[1][0] == pytest.approx(1.0, abs=1e-12)
        assert table[1][1] == pytest.approx(1.0 + math.sqrt(2.0), abs=1e-9)

    def test_solve_normalized(self):
        """Test the convenience wrapper returns a normalized profile."""
        profile = solve_normalized(2)
        assert isinstance(profile, PriceProfile)
        assert profile.normalized
