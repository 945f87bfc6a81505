"""Tests for exact rational functions of k and truncated Laurent series."""

from fractions import Fraction

import pytest

from app.algebra.field import (K, SymbolicExponent, canonical_text, rf, rf_arith, rf_constant, rf_evaluate,
                               rf_specialize)
from app.algebra.series import LaurentSeries, exponential_series, series_diff, series_mul
from app.errors import ExactArithmeticError


class TestRationalFunctions:
    """Test the scalar field Q(k)."""

    def test_arithmetic_is_exact(self):
        """(2k - 1)/(k + 1/2) evaluates exactly."""
        a = rf_arith(2 * K - 1, K + Fraction(1, 2), "div")
        assert rf_evaluate(a, 3) == Fraction(10, 7)

    def test_division_by_zero(self):
        """Dividing by the zero function raises."""
        with pytest.raises(ExactArithmeticError):
            rf_arith(K, 0, "div")

    def test_pole_on_evaluation(self):
        """Evaluating at a pole raises."""
        with pytest.raises(ExactArithmeticError):
            rf_evaluate(1 / (K - 2), 2)

    def test_canonical_text_is_monic(self):
        """Denominators are printed monic."""
        assert canonical_text((2 * K - 1) / (2 * K + 1)) == "(k - 1/2)/(k + 1/2)"
        assert canonical_text(rf(0)) == "0"

    def test_constant_detection(self):
        """Constants are recognized, k-dependent values are not."""
        assert rf_constant(rf(Fraction(3, 4))) == Fraction(3, 4)
        assert rf_constant(K + 1) is None
        assert rf_specialize(K * K, 3) == rf(9)

    def test_symbolic_exponent(self):
        """a + b k exponents split into integer and fractional parts."""
        exponent = SymbolicExponent(Fraction(5, 2), -1)
        whole, rest = exponent.split()
        assert whole == 2
        assert rest == SymbolicExponent(Fraction(1, 2), -1)
        assert exponent.at(5) == Fraction(-5, 2)
        assert str(SymbolicExponent(1, -1)) == "1-k"


class TestLaurentSeries:
    """Test truncated Laurent series arithmetic."""

    def test_product_respects_truncation(self):
        """(1 + x + O(x^3)) * x^-1 keeps the shifted order."""
        a = LaurentSeries.from_terms("x", {0: 1, 1: 1}, order=3)
        b = LaurentSeries.monomial("x", SymbolicExponent(-1))
        product = a * b
        assert product.valuation == -1
        assert product.order == 2
        assert product.coefficient(0) == rf(1)

    def test_coefficient_beyond_order(self):
        """Asking past the truncation order raises."""
        series = exponential_series("x", 1, 5)
        with pytest.raises(ExactArithmeticError):
            series.coefficient(5)

    def test_exponential_derivative(self):
        """d/dx exp(2x) = 2 exp(2x) up to the common order."""
        series = exponential_series("x", 2, 10)
        difference = series.derivative() - series.scale(2)
        assert difference.is_zero()
        assert difference.order == 9

    def test_symbolic_prefactor_derivative(self):
        """d/dx x^(1-k) = (1-k) x^(-k)."""
        series = LaurentSeries.monomial("u", SymbolicExponent(1, -1))
        derivative = series.derivative()
        assert derivative.coefficient(0) == 1 - K
        assert derivative.prefactor == SymbolicExponent(0, -1)

    def test_mismatched_prefactors(self):
        """Prefactors not differing by an integer cannot be added."""
        a = LaurentSeries.monomial("u", SymbolicExponent(0, 1))
        b = LaurentSeries.monomial("u", SymbolicExponent(Fraction(1, 2)))
        with pytest.raises(ExactArithmeticError):
            a + b

    def test_variable_mismatch(self):
        """Series in different variables cannot be combined."""
        with pytest.raises(ExactArithmeticError):
            LaurentSeries.constant("u", 1) + LaurentSeries.constant("v", 1)

    def test_reflection(self):
        """x -> -x flips odd coefficients."""
        series = LaurentSeries.from_terms("x", {0: 1, 1: 2, 2: 3})
        reflected = series.reflect()
        assert reflected.coefficient(1) == rf(-2)
        assert reflected.coefficient(2) == rf(3)

    def test_function_forms(self):
        """series_mul and series_diff agree with the operators."""
        a = LaurentSeries.from_terms("x", {-1: 1, 1: 3}, order=4)
        b = exponential_series("x", 1, 5)
        assert series_mul(a, b) == a * b
        assert series_diff(a).coefficient(-2) == rf(-1)
        assert series_diff(a).coefficient(0) == rf(3)

    def test_evaluate(self):
        """Numeric evaluation uses the stored terms."""
        series = LaurentSeries.from_terms("x", {0: 1, 2: Fraction(1, 2)})
        assert float(series.evaluate(2, 0)) == pytest.approx(3.0)


if __name__ == "__main__":
    pytest.main([__file__])
