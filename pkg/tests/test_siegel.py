"""Tests for the Siegel upper half space: slash action, cosets, operators and Eisenstein sums."""

import numpy as np
import pytest

from app.errors import CacheCorruptionError, ConvergenceError, DomainError
from app.siegel.cosets import (CosetCache, canonical_pair, complete_to_symplectic, coset_reps, plucker_key,
                               row_hnf, translation_orbit_rep, translation_orbits, word_canonical_forms, word_cosets)
from app.siegel.domain import (Evaluator, SiegelPoint, SymplecticMatrix, det_Y_power, holomorphic_exponential,
                               identity, involution, random_point, random_word, slash, slash_factor, translation)
from app.siegel.eisenstein import eisenstein_P, kohnen_eisenstein, tree_sum
from app.siegel.operators import (casimir_C, h1_apply, maass_M, maass_N, maass_N_direct, numeric_partial,
                                  omega_apply, xi2, xi2_dual)


@pytest.fixture
def points():
    rng = np.random.default_rng(3)
    return [random_point(rng) for _ in range(3)]


class TestDomain:
    """Test points, symplectic matrices and the slash action."""

    def test_point_outside_domain(self):
        """Im Z must be positive definite."""
        with pytest.raises(DomainError):
            SiegelPoint(1j, 2j, 1j)

    def test_non_symplectic_rejected(self):
        """Only matrices with M J tM = J are accepted."""
        with pytest.raises(ValueError):
            SymplecticMatrix(2 * np.eye(4))

    def test_inverse(self):
        """A random word times its inverse is the identity."""
        M = random_word(np.random.default_rng(1), 5)
        assert M @ M.inverse() == identity()

    def test_involution_action(self):
        """J maps i I to i I."""
        Z = SiegelPoint(1j, 0, 1j)
        image = involution().act(Z)
        assert abs(image.tau - 1j) < 1e-12
        assert abs(image.z) < 1e-12

    def test_slash_factor_needs_integral_shift(self):
        """alpha - beta must be an integer."""
        with pytest.raises(ValueError):
            slash_factor(1.0 + 1j, 0.5, 0.25)

    def test_slash_cocycle(self, points):
        """(G|M1)|M2 = G|(M1 M2)."""
        rng = np.random.default_rng(7)
        exponential = holomorphic_exponential([[1, 0], [0, 1]])
        G = Evaluator(lambda P: P.det_Y ** 0.3 * exponential(P), "G")
        for Z in points:
            M1, M2 = random_word(rng, 3), random_word(rng, 3)
            left = slash(slash(G, M1, 0.5, 4.5), M2, 0.5, 4.5)(Z)
            right = slash(G, M1 @ M2, 0.5, 4.5)(Z)
            assert abs(left - right) <= 1e-9 * abs(right)

    def test_translation_invariance(self, points):
        """det(Y)^s is invariant under integral translations."""
        G = det_Y_power(1.5)
        T = translation([[1, 0], [0, 2]])
        for Z in points:
            assert slash(G, T, 0.5, 4.5)(Z) == pytest.approx(G(Z), rel=1e-12)


class TestCosets:
    """Test the coset enumeration and its cache."""

    def test_bound_zero(self):
        """Bound 0 holds the identity coset only."""
        family = coset_reps(0)
        assert len(family) == 1
        assert family.keys() == [(0, 0, 1, 0, 0, 0, 0, 1)]

    def test_negative_bound(self):
        """Bounds are non-negative."""
        with pytest.raises(ValueError):
            coset_reps(-1)

    def test_matches_generator_words(self):
        """At bound 1 the enumeration is exactly the cosets reached by words of length <= 8."""
        family = coset_reps(1)
        keys = family.keys()
        assert len(keys) == len(set(keys))
        assert set(keys) == word_canonical_forms(1)
        assert len({plucker_key(c, d) for c, d in zip(family.C, family.D)}) == len(keys)

    def test_word_cosets(self):
        """The empty word gives the identity coset and one step reaches J."""
        assert list(word_cosets(0).values())[0][1].tolist() == [[1, 0], [0, 1]]
        assert plucker_key(np.eye(2, dtype=int), np.zeros((2, 2), dtype=int)) in word_cosets(1)
        assert plucker_key(-np.eye(2, dtype=int), np.zeros((2, 2), dtype=int)) == (1, 0, 0, 0, 0, 0)

    def test_nested_families(self):
        """Raising the bound only adds cosets."""
        assert set(coset_reps(1).keys()) <= set(coset_reps(2).keys())

    def test_canonical_form(self):
        """A left GL_2(Z) factor does not change the canonical pair."""
        C, D = np.array([[1, 0], [0, 0]]), np.array([[0, 0], [0, 1]])
        U = np.array([[1, 1], [0, 1]])
        assert canonical_pair(C, D) == canonical_pair(U @ C, U @ D)
        assert row_hnf([[0, 2], [0, -3]]) == [[0, 1], [0, 0]]

    def test_completion(self):
        """Completions keep the bottom blocks."""
        for C, D in zip(coset_reps(1).C, coset_reps(1).D):
            M = complete_to_symplectic(C, D)
            assert np.array_equal(M.C, C)
            assert np.array_equal(M.D, D)

    def test_cache_round_trip(self, tmp_path):
        """A written family reads back identically."""
        cache = CosetCache(str(tmp_path))
        family = coset_reps(1)
        cache.write(family)
        assert cache.read(1).keys() == family.keys()
        assert cache.load_or_build(1).keys() == family.keys()

    def test_cache_corruption(self, tmp_path):
        """A damaged cache file is reported, not silently rebuilt."""
        cache = CosetCache(str(tmp_path))
        path = cache.write(coset_reps(1))
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n")
        with pytest.raises(CacheCorruptionError):
            cache.read(1)
        path.write_text("not a cache\n")
        with pytest.raises(CacheCorruptionError):
            cache.load_or_build(1)

    def test_translation_orbits(self):
        """The stacked orbit reduction agrees with the per-coset one."""
        family = coset_reps(1)
        reps, fixed = set(), 0
        for C, D in zip(family.C, family.D):
            rep = translation_orbit_rep(C, D)
            if rep is None:
                fixed += 1
            else:
                reps.add(tuple(np.hstack(rep).ravel().tolist()))
        orbits = translation_orbits(family)
        stacked = {tuple(np.hstack([c, d]).ravel().tolist()) for c, d in zip(orbits.C, orbits.D)}
        assert orbits.fixed == fixed
        assert stacked == reps


class TestOperators:
    """Test the finite-difference operators on closed-form inputs."""

    def test_partial_of_imaginary_part(self):
        """d/dy det(Y) = y'."""
        Z = SiegelPoint(0.1 + 1.2j, 0.05 + 0.1j, -0.2 + 1.3j)
        assert numeric_partial(det_Y_power(1.0), "y", Z) == pytest.approx(1.3, rel=1e-8)
        with pytest.raises(ValueError):
            numeric_partial(det_Y_power(1.0), "w", Z)

    @pytest.mark.parametrize("k,s", [(5, 0.0), (5, -0.5), (-5, 6.5)])
    def test_omega_eigen_identity(self, points, k, s):
        """Omega det(Y)^s = -s(s - (3/2 - k)) det(Y)^s I."""
        G = det_Y_power(s)
        eigenvalue = -s * (s - (1.5 - k))
        for Z in points:
            omega = omega_apply(G, Z, 0.5, k - 0.5)
            assert np.max(np.abs(omega - eigenvalue * G(Z) * np.eye(2))) <= 1e-6 * abs(G(Z)) * max(1, abs(eigenvalue))

    def test_h1_kernel(self, points):
        """h_1 kills det(Y)^s when the Omega eigenvalue is (k - 2)/2."""
        G = det_Y_power(-0.5)
        for Z in points:
            assert abs(h1_apply(G, Z, 0.5, 4.5)) <= 1e-6 * abs(G(Z))

    def test_xi2_dual(self, points):
        """N_0 det(Y)^s = s(s - 1/2) det(Y)^s, then scaled by det(Y)^{k-3/2}."""
        G = det_Y_power(2.0)
        for Z in points:
            assert xi2_dual(G, 5, Z) == pytest.approx(3.0 * Z.det_Y ** 5.5, rel=1e-6)

    def test_xi2_constant(self, points):
        """xi2 maps det(Y)^{3/2-k} to the constant (3/2 - k)(2 - k)."""
        G = det_Y_power(-3.5)
        for Z in points:
            assert xi2(G, 5, Z) == pytest.approx(10.5, rel=1e-6)

    def test_casimir_control(self, points):
        """C det(Y)^s = s(s + 1/2)(s + k - 3/2)(s + k - 2) det(Y)^s, here 27 at k = 5, s = 1."""
        G = det_Y_power(1.0)
        Z = points[0]
        assert casimir_C(G, 5, Z) == pytest.approx(27.0 * G(Z), rel=1e-3)

    def test_holomorphic_annihilation(self, points):
        """Omega with beta = 0 kills holomorphic exponentials."""
        G = holomorphic_exponential([[1, 0.5], [0.5, 1]])
        for Z in points:
            assert np.max(np.abs(omega_apply(G, Z, 5, 0.0))) <= 1e-6 * abs(G(Z))

    def test_maass_M_eigenvalue(self, points):
        """M_{1/2} det(Y)^s = s(s + 1/2) det(Y)^s."""
        s = -3.5
        G = det_Y_power(s)
        for Z in points:
            assert maass_M(G, 0.5, Z) == pytest.approx(s * (s + 0.5) * G(Z), rel=1e-6)

    def test_maass_N_two_paths(self, points):
        """The reflected and the direct N agree."""
        exponential = holomorphic_exponential([[1, 0], [0, 1]])
        G = Evaluator(lambda P: P.det_Y ** 0.7 * exponential(P), "G")
        for Z in points:
            assert maass_N(G, 1.5, Z) == pytest.approx(maass_N_direct(G, 1.5, Z), rel=1e-6)


class TestEisenstein:
    """Test truncated Eisenstein-type sums."""

    def test_tree_sum(self):
        """Pairwise summation of an odd-length array."""
        assert tree_sum(np.array([1, 2, 3])) == 6
        assert tree_sum(np.array([])) == 0

    def test_identity_family(self, points):
        """Over the identity coset P_{k,s} is det(Y)^s."""
        family = coset_reps(0)
        for Z in points:
            assert eisenstein_P(5, 1.5, Z, family) == pytest.approx(Z.det_Y ** 1.5, rel=1e-12)

    def test_convergence_condition(self, points):
        """2s + k > 3 is required."""
        with pytest.raises(ConvergenceError):
            eisenstein_P(5, -2.0, points[0], coset_reps(0))

    def test_kohnen_identity(self, points):
        """The Kohnen-type sum of weight 1-k is det(Y)^{k-1/2} P_{k,0}."""
        family = coset_reps(1)
        for Z in points:
            assert kohnen_eisenstein(-4, 4.5, Z, family) == pytest.approx(
                Z.det_Y ** 4.5 * eisenstein_P(5, 0.0, Z, family), rel=1e-10)


if __name__ == "__main__":
    pytest.main([__file__])
