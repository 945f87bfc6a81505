"""Tests for the coefficient recursions, growth diagnostics and ratio decay."""

from fractions import Fraction

import pytest

from app.algebra.field import K, SymbolicExponent, rf
from app.algebra.series import LaurentSeries
from app.errors import DegenerateParameterError, DomainError
from app.fourier.growth import growth_diagnostic
from app.fourier.ratios import coeff_ratio_decay
from app.fourier.towers import (build_functional_tower, build_g_tower, build_h_tower, check_degree_bounds,
                                companion_residuals, g_step, growth_hypotheses, h0_from_h1,
                                h_step, partial_sum, tower_residuals)
from app.odes.solutions import confluent_solutions, indefinite_h1_specs
from app.special.hypergeometric import pfq_formal


class TestRecursionTowers:
    """Test the g- and h-towers."""

    def test_formal_laurent_tower(self):
        """The tower seeded by u^(1-k) satisfies every rung of the recursion."""
        tower = build_g_tower(LaurentSeries.monomial("u", SymbolicExponent(1, -1)), 6)
        assert len(tower) == 7
        assert tower.is_exact_solution()
        assert all(residual.is_zero() for residual in tower_residuals(tower))

    def test_single_term_partial_sum(self):
        """At v = 0 the expansion reduces to g_0."""
        k = 5
        alpha, beta = rf(Fraction(1, 2)), rf(Fraction(9, 2))
        tower = build_g_tower(LaurentSeries.monomial("u", SymbolicExponent(1 - k)), 4, alpha, beta)
        assert float(partial_sum(tower, 2.0, 0.0)) == pytest.approx(2.0 ** (1 - k))

    def test_partial_sum_domain(self):
        """g-expansions need |v| < u^2."""
        tower = build_g_tower(LaurentSeries.constant("u", 1), 2, rf(Fraction(1, 2)), rf(Fraction(9, 2)))
        with pytest.raises(DomainError):
            partial_sum(tower, 1.0, 2.0)

    def test_confluent_seeds(self):
        """Towers over the catalog solutions are exact."""
        for solution in confluent_solutions(10):
            assert build_g_tower(solution.series, 4).is_exact_solution(), solution.name

    @pytest.mark.parametrize("name", sorted(indefinite_h1_specs()))
    def test_h_towers_and_companions(self, name):
        """h_0 from h_1 satisfies both companion relations."""
        tower = build_h_tower(pfq_formal(indefinite_h1_specs()[name], 16), 5)
        first, second = companion_residuals(tower.terms[0], tower.terms[1])
        assert tower.is_exact_solution()
        assert first.is_zero()
        assert second.is_zero()
        assert tower.terms[2] == h_step(tower.terms[0], 0)

    def test_h0_from_constant(self):
        """A constant h_1 gives h_0 = (alpha + beta)/(beta - alpha); alpha = beta is degenerate."""
        h_0 = h0_from_h1(LaurentSeries.constant("v", 1))
        assert h_0.coefficient(0) == K / (K - 1)
        with pytest.raises(DegenerateParameterError):
            h0_from_h1(LaurentSeries.constant("v", 1), rf(Fraction(1, 2)), rf(Fraction(1, 2)))

    def test_growth_hypotheses(self):
        """deg p_{n,0} = 0 and deg p_{n,d} < d, with valuation bound -2."""
        hypotheses = growth_hypotheses(8)
        assert hypotheses.holds
        assert hypotheses.valuation_bound == -2

    def test_degree_bounds(self):
        """A Laurent-polynomial tower stays inside the degree bounds."""
        alpha, beta = rf(Fraction(1, 2)), rf(Fraction(-11, 2))
        tower = build_g_tower(LaurentSeries.monomial("u", SymbolicExponent(6)), 6, alpha, beta)
        assert check_degree_bounds(tower, growth_hypotheses(6, alpha, beta).valuation_bound) == []

    def test_functional_tower(self):
        """Rungs over {psi, phi, phi'} satisfy the recursion exactly."""
        tower = build_functional_tower("W", 5, 4)
        assert tower.is_exact_solution()
        assert g_step(tower.terms[0], 0, tower.alpha, tower.beta) == tower.terms[1]


class TestGrowthDiagnostic:
    """Test the moderate/rapid classification."""

    def test_zero_seed_is_moderate(self):
        """The zero tower never grows."""
        report = growth_diagnostic("zero", 5, N=8)
        assert report.verdict == "moderate"
        assert report.threshold == 8.0
        assert report.to_dict()["seed"] == "zero"

    def test_unknown_seed(self):
        """Seeds come from a fixed list."""
        with pytest.raises(ValueError):
            growth_diagnostic("gaussian", 5)

    def test_laurent_seed_is_rapid(self):
        """A nonvanishing polynomial tower grows rapidly."""
        assert growth_diagnostic("laurent", 5).rapid

    def test_kappa_from_coefficient_bound(self):
        """kappa is twice the observed coefficient bound unless given explicitly."""
        report = growth_diagnostic("laurent", 5, N=16)
        assert report.coefficient_bound >= 1.0
        assert report.kappa == pytest.approx(2 * report.coefficient_bound)
        assert growth_diagnostic("laurent", 5, N=16, kappa=3.0).kappa == 3.0
        assert growth_diagnostic("zero", 5, N=8).kappa == 2.0


class TestRatioDecay:
    """Test the exact coefficient-ratio decay."""

    def test_decay_at_k_minus_two(self):
        """The ratio decreases monotonically from some index on and becomes small."""
        result = coeff_ratio_decay(-2, 80)
        assert result.monotone_from is not None
        assert result.positive_from is not None
        assert result.below(1e-3)
        assert isinstance(result.final_ratio, Fraction)

    def test_positive_k_rejected(self):
        """The statement is for negative k."""
        with pytest.raises(ValueError):
            coeff_ratio_decay(3, 10)


if __name__ == "__main__":
    pytest.main([__file__])
