"""Tests for hypergeometric series, Whittaker functions, incomplete Gamma and H."""

import math
from fractions import Fraction

import pytest

from app.algebra.field import K, rf
from app.errors import DegenerateParameterError, DomainError, HypothesisError, NonconvergentSeriesError
from app.special.functions import (H_function, H_function_quadrature, confluent_residual, incomplete_gamma,
                                   rank_one_retained, retained_phi, retained_psi, whittaker,
                                   whittaker_ode_residual)
from app.special.hypergeometric import (ArgumentScale, HypergeometricSpec, NumericPrecision, pfq_formal,
                                        pfq_numeric, pfq_partial_sum, pochhammer)


class TestHypergeometric:
    """Test formal and numeric pFq."""

    def test_pochhammer(self):
        """Rising factorials."""
        assert pochhammer(3, 2) == 12
        assert pochhammer(Fraction(1, 2), 0) == 1

    def test_formal_coefficients(self):
        """1F1(a; b; x) has c_1 = a/b exactly in k."""
        series = pfq_formal(HypergeometricSpec((K,), (K + 1,), variable="u"), 3)
        assert series.coefficient(1) == K / (K + 1)
        assert series.order == 4

    def test_numeric_closed_form(self):
        """1F1(1; 2; 1) = e - 1."""
        spec = HypergeometricSpec((rf(1),), (rf(2),), ArgumentScale(Fraction(1)), variable="u")
        assert pfq_numeric(spec, 1.0) == pytest.approx(math.e - 1, rel=1e-12)
        assert float(pfq_partial_sum([1], [2], 1.0, 60)) == pytest.approx(math.e - 1, rel=1e-12)

    def test_k_dependent_needs_value(self):
        """Numeric evaluation of a k-dependent series needs k."""
        spec = HypergeometricSpec((K,), (rf(2),))
        with pytest.raises(HypothesisError):
            pfq_numeric(spec, 0.5)
        assert pfq_numeric(spec, 0.5, k_value=0) == pytest.approx(1.0)

    def test_divergent_series(self):
        """2F1 outside the unit disc is refused unless truncation is declared."""
        spec = HypergeometricSpec((rf(1), rf(1)), (rf(2),))
        with pytest.raises(NonconvergentSeriesError):
            pfq_numeric(spec, 2.0)
        truncated = pfq_numeric(spec, 2.0, precision=NumericPrecision(series_cutoff=5, declared_truncation=True))
        assert truncated == pytest.approx(float(pfq_partial_sum([1, 1], [2], 2.0, 5)))


class TestWhittaker:
    """Test Whittaker functions and their domain errors."""

    def test_closed_forms(self):
        """M_{0,1/2}(y) = 2 sinh(y/2) and W_{0,1/2}(y) = e^{-y/2}."""
        assert whittaker("M", 0.0, 0.5, 2.0) == pytest.approx(2 * math.sinh(1.0), rel=1e-12)
        assert whittaker("W", 0.0, 0.5, 3.0) == pytest.approx(math.exp(-1.5), rel=1e-12)

    def test_ode_residual(self):
        """Both functions satisfy Whittaker's equation."""
        assert whittaker_ode_residual("M", 0.0, 0.5, 3.0) < 1e-10
        assert whittaker_ode_residual("W", -1.0, 0.5, 5.0) < 1e-10

    def test_degenerate_mu(self):
        """M is undefined when 1 + 2 mu is a nonpositive integer."""
        with pytest.raises(DegenerateParameterError):
            whittaker("M", 0.0, -0.5, 1.0)

    def test_domain(self):
        """Whittaker functions and Gamma(a, y) need y > 0."""
        with pytest.raises(DomainError):
            whittaker("W", 0.0, 0.5, 0.0)
        with pytest.raises(DomainError):
            incomplete_gamma(1.0, -1.0)


class TestIncompleteGammaAndH:
    """Test Gamma(a, y) and H(w)."""

    def test_gamma_closed_form(self):
        """Gamma(1, y) = e^{-y}."""
        assert incomplete_gamma(1.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)

    def test_gamma_asymptotics(self):
        """Gamma(-2, 80) / (80^-3 e^-80) is within 5% of 1."""
        y = 80.0
        ratio = incomplete_gamma(-2.0, y) / (y ** -3 * math.exp(-y))
        assert abs(ratio - 1) < 0.05

    @pytest.mark.parametrize("k,w", [(-1, -1.0), (0, -0.5), (-3, -2.0), (-5, -1.0), (1, -0.5), (-2, -3.0)])
    def test_h_matches_quadrature(self, k, w):
        """The Gamma form of H agrees with its defining integral for w < 0."""
        assert H_function(w, k) == pytest.approx(H_function_quadrature(w, k), rel=1e-9)

    def test_h_domain(self):
        """H is not defined at 0, and the quadrature form needs w < 0."""
        with pytest.raises(DomainError):
            H_function(0.0, 1)
        with pytest.raises(DomainError):
            H_function_quadrature(0.5, 1)
        assert isinstance(H_function(0.5, 1), complex)


class TestRetainedSolutions:
    """Test the retained confluent solutions numerically."""

    @pytest.mark.parametrize("k", [5, -5])
    def test_confluent_residuals(self, k):
        """u^{k-2} e^u Gamma(2-k, 2u) and u^{-k/2} W(2u) solve their equations."""
        assert confluent_residual("phi", k, retained_phi(k), 1.5) < 1e-10
        assert confluent_residual("psi", k, retained_psi(k), 1.5) < 1e-10

    def test_rank_one_scale(self):
        """The psi part of the rank-one coefficient is u^{-k/2} W(4 pi u)."""
        k, u = -5, 0.7
        expected = u ** (-k / 2) * whittaker("W", (1 - k) / 2, (k - 1) / 2, 4 * math.pi * u)
        assert rank_one_retained(k, u, 0.0, 1.0) == pytest.approx(expected, rel=1e-10)

    def test_rank_one_domain(self):
        """Rank-one coefficients are evaluated for u > 0."""
        with pytest.raises(DomainError):
            rank_one_retained(5, 0.0, 1.0, 0.0)


if __name__ == "__main__":
    pytest.main([__file__])
