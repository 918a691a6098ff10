"""Tests for densities, regularity and the reserve-price dual."""

import math

import numpy as np
import pytest

from sja_auction.distributions import (
    Density1D,
    from_functions,
    get_distribution,
    myerson_dual,
    nonregular_example,
    regularity_check,
    reserve_price,
    revenue_curve,
    uniform,
)
from sja_auction.errors import DomainViolation, InvalidInputError, NonRegularDistributionError


class TestDensity:
    """Density construction and evaluation."""

    def test_uniform_name(self):
        """Test the registered uniform is on [0, 1]."""
        dist = get_distribution("uniform")
        assert dist.name == "uniform[0,1]"
        assert dist.support == (0.0, 1.0)

    def test_unknown_distribution(self):
        """Test unknown names are rejected."""
        with pytest.raises(InvalidInputError):
            get_distribution("lognormal")

    def test_bad_support(self):
        """Test the upper end must exceed the lower end."""
        with pytest.raises(InvalidInputError):
            uniform(2.0, 1.0)

    def test_unbounded_support(self):
        """Test the support must be bounded."""
        with pytest.raises(InvalidInputError):
            Density1D("exp", lambda x: x, lambda x: x, 0.0, math.inf)

    def test_outside_support(self):
        """Test evaluation outside the support raises."""
        with pytest.raises(DomainViolation):
            uniform().F(1.5)
        with pytest.raises(DomainViolation):
            revenue_curve(uniform(), -0.1)

    def test_revenue_curve(self):
        """Test R(x) = x (1 - F(x))."""
        assert revenue_curve(uniform(), 0.5) == pytest.approx(0.25)
        assert revenue_curve(uniform(0.0, 2.0), 1.0) == pytest.approx(0.5)

    def test_nonregular_mass(self):
        """Test the cubic density integrates to 1 and stays positive."""
        dist = nonregular_example()
        assert dist.total_mass() == pytest.approx(1.0, abs=1e-10)
        assert np.all(dist.f(dist.grid(501)) > 0.0)

    def test_numeric_derivative(self):
        """Test f' by central differences matches the exact derivative."""
        exact = nonregular_example()
        numeric = from_functions("cubic", exact.cdf, exact.pdf, 0.0, 1.0)
        xs = np.linspace(0.1, 0.9, 9)
        np.testing.assert_allclose(numeric.f_prime(xs), exact.f_prime(xs), atol=1e-5)


class TestRegularity:
    """Monotonicity of the virtual surplus."""

    def test_uniform_is_regular(self):
        """Test F + x f - 1 = 2x - 1 is increasing."""
        report = regularity_check(uniform())
        assert report.monotone
        assert report.intervals == []

    def test_cubic_is_not_regular(self):
        """Test the cubic example has one decreasing interval around the middle."""
        report = regularity_check(nonregular_example())
        assert not report.monotone
        assert len(report.intervals) == 1
        lo, hi = report.intervals[0]
        assert lo == pytest.approx(0.3508, abs=2e-3)
        assert hi == pytest.approx(0.6862, abs=2e-3)
        assert report.to_dict()["intervals"] == [[lo, hi]]

    def test_grid_too_small(self):
        """Test at least two points are needed."""
        with pytest.raises(InvalidInputError):
            regularity_check(uniform(), grid=1)


class TestMyersonDual:
    """Reserve prices and zero-slack duals."""

    @pytest.mark.parametrize(
        "a,b,reserve,revenue",
        [
            (0.0, 1.0, 0.5, 0.25),
            (0.0, 2.0, 1.0, 0.5),
            (1.0, 2.0, 1.0, 1.0),
        ],
    )
    def test_uniform_cases(self, a, b, reserve, revenue):
        """Test reserve, objective and revenue for uniform densities."""
        dual = myerson_dual(uniform(a, b))
        assert dual.reserve == pytest.approx(reserve, abs=1e-12)
        assert dual.revenue == pytest.approx(revenue, abs=1e-12)
        assert dual.objective == pytest.approx(revenue, abs=1e-9)
        assert dual.passed, dual.residuals

    def test_reserve_at_lower_end(self):
        """Test a nonnegative surplus at L prices at L."""
        assert reserve_price(uniform(1.0, 2.0)) == 1.0

    def test_dual_functions(self):
        """Test z = max(0, 2x - 1) and u = max(0, x - 1/2) on [0, 1]."""
        dual = myerson_dual(uniform())
        np.testing.assert_allclose(dual.z([0.25, 0.75]), [0.0, 0.5])
        np.testing.assert_allclose(dual.utility([0.25, 0.75]), [0.0, 0.25])

    def test_residual_names(self):
        """Test every complementarity and feasibility condition is reported."""
        dual = myerson_dual(uniform())
        assert set(dual.residuals) == {
            "interior",
            "lower_end",
            "upper_end",
            "allocation",
            "negative_z",
            "derivative",
            "upper_value",
            "lower_value",
        }
        assert dual.to_dict()["distribution"] == "uniform[0,1]"

    def test_non_regular_rejected(self):
        """Test the cubic example raises with its decreasing intervals."""
        with pytest.raises(NonRegularDistributionError) as exc_info:
            myerson_dual(nonregular_example())
        assert exc_info.value.name == "nonregular"
        assert exc_info.value.intervals
