"""Tests for the Jacobi group, skew operators, Fourier coefficients and the limit process."""

import mpmath
import numpy as np
import pytest

from app.errors import CacheCorruptionError, ConvergenceError, DomainError
from app.jacobi.fourier import (FourierJacobiSlice, classify_fourier_term, discriminant, fourier_coeff_jacobi,
                                fourier_jacobi_coeff, jacobi_fourier_data, profile, profile_ratio_defect)
from app.jacobi.group import (JacobiCosetCache, JacobiEvaluator, JacobiGroupElement, JacobiPoint,
                              brute_force_jacobi_keys, complete_row, jacobi_cosets)
from app.jacobi.limit import (EXTENDED_DELTA_MAX, RankOneSlice, delta_grid, kohnen_limit, neville_at_zero,
                              proportionality_spread, rank_one_limit_check, successive_spread)
from app.jacobi.operators import (casimir_sk, heat_L, holo_slash, lowering_sk, maass_jacobi_casimir, skew_slash,
                                  xi_sk)
from app.jacobi.series import skew_eisenstein
from app.siegel.domain import holomorphic_exponential


def theta_monomial(n, r):
    """e(n tau + r z)."""
    return JacobiEvaluator(lambda P: np.exp(2j * np.pi * (n * P.tau + r * P.z)), f"q^{n} zeta^{r}")


def with_profile(tag, n, r, m, k):
    """A single harmonic term: profile(y) e(n x + r u) e^{-2 pi (n y + r v)}."""
    base = theta_monomial(n, r)
    return JacobiEvaluator(lambda P: profile(tag, n, r, m, k, P.y) * base(P), tag)


POINT = JacobiPoint(0.2 + 1.1j, 0.1 + 0.15j)


class TestJacobiGroup:
    """Test group law, action and coset enumeration."""

    def test_action_is_compatible_with_product(self):
        """(A B) P = A (B P)."""
        A = JacobiGroupElement(1, 1, 0, 1, 1, 0)
        B = JacobiGroupElement(0, -1, 1, 0, 0, 1)
        left = (A @ B).act(POINT)
        right = A.act(B.act(POINT))
        assert abs(left.tau - right.tau) < 1e-12
        assert abs(left.z - right.z) < 1e-12

    def test_determinant_checked(self):
        """Elements need det M = 1."""
        with pytest.raises(ValueError):
            JacobiGroupElement(1, 1, 1, 1)
        with pytest.raises(DomainError):
            JacobiPoint(1j * -1, 0)

    def test_complete_row(self):
        """Completion of a coprime bottom row."""
        a, b = complete_row(2, 3)
        assert a * 3 - b * 2 == 1
        with pytest.raises(ValueError):
            complete_row(2, 4)

    def test_coset_counts(self):
        """Bound 1 has 8 rows with 3 shifts each; bound 0 the identity alone."""
        assert len(jacobi_cosets(1)) == 24
        assert len(jacobi_cosets(0)) == 1
        with pytest.raises(ValueError):
            jacobi_cosets(-1)

    def test_matches_brute_force(self):
        """Every coset in the bound-1 box appears exactly once."""
        keys = jacobi_cosets(1).keys()
        assert len(keys) == len(set(keys))
        assert set(keys) == brute_force_jacobi_keys(1)

    def test_cache(self, tmp_path):
        """Round trip, then a row with det 0 is rejected."""
        cache = JacobiCosetCache(str(tmp_path))
        path = cache.write(jacobi_cosets(1))
        assert cache.load_or_build(1).keys() == jacobi_cosets(1).keys()
        lines = path.read_text().splitlines()
        lines[1] = "1 1 1 1 0 0"
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(CacheCorruptionError):
            cache.read(1)


class TestSkewOperators:
    """Test the skew slash action and the heat, xi and Casimir operators."""

    def test_skew_cocycle(self):
        """(phi|A)|B = phi|(AB)."""
        phi = JacobiEvaluator(lambda P: P.y ** 0.3 * np.exp(2j * np.pi * (P.tau + 0.5 * P.z)))
        A = JacobiGroupElement(1, 1, 0, 1, 1, 0)
        B = JacobiGroupElement(0, -1, 1, 0, 0, 1)
        left = skew_slash(skew_slash(phi, A, -5, 1), B, -5, 1)(POINT)
        right = skew_slash(phi, A @ B, -5, 1)(POINT)
        assert left == pytest.approx(right, rel=1e-9)

    def test_holomorphic_cocycle(self):
        """The holomorphic slash is an action as well."""
        phi = JacobiEvaluator(lambda P: np.exp(2j * np.pi * (P.tau + 0.5 * P.z)))
        A = JacobiGroupElement(1, 1, 0, 1, 1, 0)
        B = JacobiGroupElement(0, -1, 1, 0, 0, 1)
        left = holo_slash(holo_slash(phi, A, 4, 1), B, 4, 1)(POINT)
        assert left == pytest.approx(holo_slash(phi, A @ B, 4, 1)(POINT), rel=1e-9)

    def test_casimir_kills_harmonic_term(self):
        """The skew Casimir annihilates a c+ term of weight k."""
        phi = with_profile("c+", 0, 1, 1, -5)
        assert abs(casimir_sk(phi, -5, 1, POINT)) <= 1e-3 * abs(phi(POINT))

    def test_heat_kernel(self):
        """L_m kills q^n zeta^r with r^2 = 4 m n."""
        phi = theta_monomial(1, 2)
        assert abs(heat_L(phi, 1, POINT)) <= 1e-6 * 16 * np.pi ** 2 * abs(phi(POINT))

    def test_heat_on_y(self):
        """L_m y = 4 pi m."""
        phi = JacobiEvaluator(lambda P: P.y, "y")
        assert heat_L(phi, 2, POINT) == pytest.approx(8 * np.pi, rel=1e-8)

    def test_lowering(self):
        """D_- y = y^2."""
        phi = JacobiEvaluator(lambda P: P.y, "y")
        assert lowering_sk(phi, 3, POINT) == pytest.approx(POINT.y ** 2, rel=1e-8)
        with pytest.raises(DomainError):
            lowering_sk(phi, 0, POINT)

    def test_xi_constant(self):
        """xi^sk maps y^{3/2-k} to the constant 3/2 - k."""
        k = -5
        phi = JacobiEvaluator(lambda P: P.y ** (1.5 - k), "psi")
        assert xi_sk(phi, k, 1)(POINT) == pytest.approx(1.5 - k, rel=1e-7)
        with pytest.raises(DomainError):
            xi_sk(phi, k, 0)

    def test_maass_jacobi_casimir_on_y(self):
        """C^{k,m} y = (2k - 1) y / (8 pi i m)."""
        k, m = 5, 1
        phi = JacobiEvaluator(lambda P: P.y, "y")
        expected = (2 * k - 1) * POINT.y / (8j * np.pi * m)
        assert maass_jacobi_casimir(phi, k, m, POINT) == pytest.approx(expected, rel=1e-4)


class TestFourierCoefficients:
    """Test term classification and coefficient extraction."""

    def test_classification(self):
        """D = r^2 - 4mn decides the class."""
        assert discriminant(1, 2, 1) == 0
        assert classify_fourier_term(1, 2, 1) == "c0"
        assert classify_fourier_term(0, 1, 1) == "c+"
        assert classify_fourier_term(1, 0, 1) == "c-"
        with pytest.raises(ValueError):
            profile("c?", 1, 0, 1, 5, 1.0)

    def test_extraction(self):
        """The trapezoid recovers a single monomial and nothing else."""
        phi = theta_monomial(1, 1)
        assert fourier_coeff_jacobi(phi, 1, 1, 1.0, 0.1, N=8) == pytest.approx(1.0, rel=1e-10)
        assert abs(fourier_coeff_jacobi(phi, 0, 1, 1.0, 0.1, N=8)) < 1e-10

    def test_fourier_jacobi_coefficient(self):
        """e(tau + tau') has a single Fourier-Jacobi coefficient, of index 1."""
        F = holomorphic_exponential([[1, 0], [0, 1]])
        tau, z, y_p = 0.1 + 1.2j, 0.05 + 0.1j, 1.4
        expected = np.exp(2j * np.pi * tau) * np.exp(-2 * np.pi * y_p)
        assert fourier_jacobi_coeff(F, 1, tau, z, y_p, N=8) == pytest.approx(expected, rel=1e-10)
        assert abs(fourier_jacobi_coeff(F, 2, tau, z, y_p, N=8)) < 1e-12

    def test_fourier_data(self):
        """Extracted data carries the class of the term."""
        data = jacobi_fourier_data(theta_monomial(0, 1), 0, 1, 1, 1.0, N=8)
        assert data.tag == "c+"
        assert data.discriminant == 1
        assert data.to_dict()["value"] == pytest.approx([1.0, 0.0], abs=1e-10)

    @pytest.mark.parametrize("tag,n,r", [("c+", 0, 1), ("c-", 1, 0), ("c0", 1, 2)])
    def test_profile_ratio(self, tag, n, r):
        """A synthetic term of each class follows its own y-profile."""
        phi = with_profile(tag, n, r, 1, -5)
        assert profile_ratio_defect(phi, n, r, 1, -5, 1.0, 1.5, N=8) < 1e-9


class TestLimitProcess:
    """Test the delta grid, extrapolation and limits with known values."""

    def test_delta_grid(self):
        """Even steps to 24, then doubling from 48."""
        assert delta_grid(48) == [4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0, 22.0, 24.0, 48.0]
        assert delta_grid() == [float(d) for d in range(4, 25, 2)]
        assert delta_grid(EXTENDED_DELTA_MAX)[-1] == 6144.0

    def test_neville(self):
        """Linear data extrapolates exactly."""
        h = [0.5, 0.25, 0.125]
        assert neville_at_zero(h, [1 + 2 * x for x in h]) == pytest.approx(1.0)

    def test_shape_function(self):
        """value * e^{-2 pi m y'} has limit value."""
        m, value = 2, 0.75 - 0.25j
        record = kohnen_limit(lambda tau, z, y_p: value * mpmath.exp(-2 * mpmath.pi * m * y_p),
                              m, 0.1 + 1.2j, 0.05 + 0.2j, delta_grid(768))
        assert record.converged
        assert record.limit == pytest.approx(value, rel=1e-9)
        assert record.to_dict()["method"] == "direct"

    def test_drifting_values_are_flagged(self):
        """Values 1 + 5/delta fail the Cauchy test while their extrapolation settles at 1."""
        class Drifting:
            def compensated(self, tau, z, delta):
                return 1 + 5 / delta

        record = kohnen_limit(Drifting(), 1, 0.1 + 1.2j, 0.05 + 0.2j)
        assert record.deltas[-1] == 24.0
        assert not record.converged
        assert record.spread > 1e-3
        assert record.extrapolation_converged
        assert record.limit == pytest.approx(1.0, rel=1e-12)
        assert record.to_dict()["method"] == "compensated"

    def test_fourier_jacobi_slice_limit(self):
        """The trapezoid slice of e(tau + tau') compensates exactly to e(tau)."""
        F = holomorphic_exponential([[1, 0], [0, 1]])
        tau, z = 0.1 + 1.2j, 0.05 + 0.2j
        slice_ = FourierJacobiSlice(F, 1, N=8)
        assert slice_(tau, z, 1.4) == pytest.approx(fourier_jacobi_coeff(F, 1, tau, z, 1.4, N=8), rel=1e-12)
        record = kohnen_limit(slice_, 1, tau, z)
        assert record.converged
        assert record.to_dict()["method"] == "direct"
        assert record.values[-1] == pytest.approx(np.exp(2j * np.pi * tau), rel=1e-8)

    def test_successive_spread(self):
        """Relative successive differences over the last three values."""
        assert successive_spread([5.0, 1.0, 1.0, 1.0]) == 0.0
        assert successive_spread([0.0, 0.0, 0.0]) == 0.0
        assert successive_spread([1.0, 2.0]) == float("inf")
        assert successive_spread([1.0, 1.1, 1.0]) == pytest.approx(0.1)

    def test_limit_arguments(self):
        """m > 0 and an increasing grid are required."""
        with pytest.raises(DomainError):
            kohnen_limit(lambda tau, z, y_p: 1.0, 0, 1j, 0j)
        with pytest.raises(ValueError):
            kohnen_limit(lambda tau, z, y_p: 1.0, 1, 1j, 0j, [8.0, 4.0])

    def test_rank_one_limit(self):
        """The rank-one slice tends to its closed form for negative k."""
        result = rank_one_limit_check(-5, 1, 1, 1, 0.0, 1.0, 0.1 + 1.0j, 0.05 + 0.1j)
        assert result["record"].extrapolation_converged
        assert result["relative_error"] < 1e-3

    def test_rank_one_needs_singular_T(self):
        """T must have determinant zero."""
        with pytest.raises(ValueError):
            RankOneSlice(-5, 2, 1, 1)

    def test_proportionality(self):
        """Exactly proportional data has zero spread."""
        b = [1 + 1j, 2.0, -0.5j]
        fit = proportionality_spread([2 * x for x in b], b)
        assert fit["scalar"] == pytest.approx(2.0)
        assert fit["spread"] < 1e-12


class TestJacobiEisenstein:
    """Test the truncated Jacobi Eisenstein series."""

    def test_identity_family(self):
        """Over the identity coset the skew-1 series is 1."""
        assert skew_eisenstein(5, 1, 0.0, POINT, jacobi_cosets(0)) == pytest.approx(1.0)

    def test_arguments(self):
        """Unknown variants and divergent weights are refused."""
        with pytest.raises(ValueError):
            skew_eisenstein(5, 1, 0.0, POINT, jacobi_cosets(0), "skew-2")
        with pytest.raises(ConvergenceError):
            skew_eisenstein(2, 1, 0.0, POINT, jacobi_cosets(0))


if __name__ == "__main__":
    pytest.main([__file__])
