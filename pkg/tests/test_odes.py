"""Tests for linear differential operators and the exact ODE checks."""

import pytest

from app.algebra.field import K, SymbolicExponent, rf
from app.algebra.series import LaurentSeries
from app.errors import ExactArithmeticError, HypothesisError
from app.odes.checks import (ALPHA, BETA, catalog_operator, confluent_ode_check, finite_check,
                             phi_whittaker_ode_check, quartic_h1_operator, symmetry_check)
from app.odes.operators import LinearDiffOp, apply_op, compose
from app.odes.solutions import confluent_solutions, indefinite_h1_specs, whittaker_m_solutions
from app.special.hypergeometric import HypergeometricSpec


class TestLinearDiffOp:
    """Test operator construction, application and composition."""

    def test_compose_leibniz(self):
        """d/dx o x = x d/dx + 1, so x^k maps to (k+1) x^k."""
        derivative = LinearDiffOp.from_terms("x", {1: {0: 1}})
        times_x = LinearDiffOp.from_terms("x", {0: {1: 1}})
        composed = compose(derivative, times_x)
        image = composed.apply(LaurentSeries.monomial("x", SymbolicExponent(0, 1)))
        assert image.coefficient(0) == K + 1

    def test_conjugation(self):
        """x^-k D x^k applied to 1 is k / x."""
        derivative = LinearDiffOp.from_terms("x", {1: {0: 1}})
        conjugated = derivative.conjugated(SymbolicExponent(0, 1))
        image = conjugated.apply(LaurentSeries.constant("x", 1))
        assert image.coefficient(-1) == K

    def test_apply(self):
        """x^2 d/dx maps x^3 to 3 x^4."""
        op = LinearDiffOp.from_terms("x", {1: {2: 1}})
        image = apply_op(op, LaurentSeries.monomial("x", SymbolicExponent(3)))
        assert image.coefficient(4) == rf(3)
        assert image.valuation == 4

    def test_order_and_degree(self):
        """The quartic operator has D = 4 and m_v = 3."""
        op = quartic_h1_operator()
        assert op.order == 4
        assert op.m_v == 3
        assert op.is_polynomial

    def test_truncated_coefficient_rejected(self):
        """Operator coefficients must be exact."""
        with pytest.raises(ExactArithmeticError):
            LinearDiffOp("x", ((0, LaurentSeries.from_terms("x", {0: 1}, order=3)),))

    def test_catalog(self):
        """Operators are addressable by identifier."""
        assert catalog_operator("confluent-phi").name == "confluent-phi"
        with pytest.raises(KeyError):
            catalog_operator("no-such-operator")


class TestFiniteCheck:
    """Test the finite-window verification of hypergeometric solutions."""

    @pytest.mark.parametrize("name", sorted(indefinite_h1_specs()))
    def test_h1_solutions_verified(self, name):
        """All four h_1 solutions are annihilated by the quartic operator."""
        result = finite_check(quartic_h1_operator(), indefinite_h1_specs()[name])
        assert result.success
        assert len(result.window) == 12
        assert result.vacuous == [-4, -3, -2]

    def test_perturbed_parameter_fails(self):
        """A wrong lower parameter is caught with the first failing index."""
        regular = indefinite_h1_specs()["1F2-regular"]
        spec = HypergeometricSpec(regular.upper, ((1 + K) / 2, 2 + K / 2), regular.scale)
        result = finite_check(quartic_h1_operator(), spec)
        assert not result.success
        assert result.failed_index is not None
        assert result.residual

    def test_lower_parameter_hypothesis(self):
        """A nonpositive integral lower parameter is rejected."""
        spec = HypergeometricSpec((rf(1),), (rf(0),))
        with pytest.raises(HypothesisError):
            finite_check(quartic_h1_operator(), spec)


class TestConfluentSolutions:
    """Test the catalog against the confluent and Whittaker-type equations."""

    def test_confluent_solutions(self):
        """Each catalog entry solves its own equation and its reflection."""
        for solution in confluent_solutions(12):
            kind = solution.equation.split("-", 1)[1]
            assert confluent_ode_check(kind, ALPHA, BETA, solution.series).success, solution.name
            assert symmetry_check(kind, ALPHA, BETA, solution.series).success, solution.name

    def test_wrong_equation_fails(self):
        """The exponential solution of the phi-equation does not solve the psi-equation."""
        exponential = confluent_solutions(12)[0]
        result = confluent_ode_check("psi", ALPHA, BETA, exponential.series)
        assert not result.success
        assert result.failed_index is not None

    def test_whittaker_m_both_signs(self):
        """Both signs of mu give solutions of the Whittaker-type phi-equation."""
        for solution in whittaker_m_solutions(12):
            assert phi_whittaker_ode_check(solution.series, ALPHA, BETA).success, solution.name


if __name__ == "__main__":
    pytest.main([__file__])
