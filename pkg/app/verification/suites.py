"""Registry of named verification suites, and the run / cache entry points.

Each suite builder turns a SuiteConfig into a list of independent Checks.
Coset families are loaded while the checks are built, so a corrupt cache file
stops the run before any check starts.
"""

import asyncio
import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence

import mpmath
import numpy as np

from .. import __version__
from ..algebra.field import SymbolicExponent, rf
from ..algebra.series import LaurentSeries
from ..errors import ConfigError, UnknownSuiteError
from ..fourier.growth import growth_diagnostic
from ..fourier.ratios import coeff_ratio_decay
from ..fourier.towers import (build_functional_tower, build_g_tower, build_h_tower, check_degree_bounds,
                              companion_residuals, growth_hypotheses)
from ..jacobi.fourier import (FourierJacobiSlice, classify_fourier_term, fourier_coeff_jacobi, fourier_jacobi_coeff,
                              profile, profile_ratio_defect)
from ..jacobi.group import (JacobiCosetCache, JacobiCosetFamily, JacobiEvaluator, JacobiGroupElement,
                            brute_force_jacobi_keys, jacobi_cosets, random_jacobi_point)
from ..jacobi.limit import (EXTENDED_DELTA_MAX, delta_grid, kohnen_limit, proportionality_spread,
                            rank_one_limit_check)
from ..jacobi.operators import casimir_sk, heat_L, holo_slash, maass_jacobi_casimir, skew_slash, xi_sk
from ..jacobi.series import (holomorphic_jacobi_eisenstein, skew_eisenstein, skew_eisenstein_evaluator)
from ..odes.checks import (ALPHA, BETA, confluent_ode_check, finite_check, phi_whittaker_ode_check,
                           quartic_h1_operator, symmetry_check)
from ..odes.solutions import confluent_solutions, indefinite_h1_specs, whittaker_m_solutions
from ..siegel.cosets import CosetCache, CosetFamily, coset_reps, plucker_key, word_canonical_forms
from ..siegel.domain import (Evaluator, SiegelPoint, det_Y_power, holomorphic_exponential, random_point,
                             random_word, slash)
from ..siegel.eisenstein import (eisenstein_P, eisenstein_P_evaluator, holomorphic_eisenstein,
                                 invariance_defect, kohnen_eisenstein, maass_eisenstein, ray_growth_slopes,
                                 UnfoldedFourierJacobi)
from ..siegel.operators import casimir_C, maass_M, maass_N, maass_N_direct, omega_apply, xi2
from ..special.functions import (H_function, H_function_quadrature, confluent_residual, incomplete_gamma,
                                 rank_one_retained, retained_phi, retained_psi, whittaker,
                                 whittaker_ode_residual)
from ..special.hypergeometric import ArgumentScale, HypergeometricSpec, pfq_formal, pfq_numeric, pfq_partial_sum
from .models import SUITES, SuiteConfig, VerificationReport
from .pipeline import Check, Outcome, VerificationPipeline, summarize
from .report import ReportWriter

logger = logging.getLogger(__name__)

SuiteBuilder = Callable[[SuiteConfig], List[Check]]


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    description: str
    build: SuiteBuilder


REGISTRY: Dict[str, SuiteEntry] = {}


def register(name: str, description: str):
    if name not in SUITES:
        raise ValueError(f"suite '{name}' is not declared in SUITES")

    def decorator(build: SuiteBuilder) -> SuiteBuilder:
        REGISTRY[name] = SuiteEntry(name, description, build)
        return build
    return decorator


# shared helpers -----------------------------------------------------------

@dataclass
class LadderResult:
    """A quantity at two truncation bounds; passes on a decrease by `factor` or when both are at noise level."""
    low_bound: int
    high_bound: int
    low: float
    high: float
    factor: float
    tolerance: float

    @property
    def decreased(self) -> bool:
        return self.high * self.factor <= self.low

    @property
    def below_tolerance(self) -> bool:
        return max(self.low, self.high) <= self.tolerance

    @property
    def success(self) -> bool:
        return self.decreased or self.below_tolerance

    @property
    def branch(self) -> str:
        if self.decreased:
            return "decrease"
        return "below-tolerance" if self.below_tolerance else "none"

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["branch"] = self.branch
        return data


def _ladder_outcome(ladder: LadderResult) -> Outcome:
    return Outcome(ladder.success, {"low": ladder.low, "high": ladder.high}, ladder.tolerance,
                   ladder.to_dict())


def _relative(observed: complex, expected: complex) -> float:
    scale = abs(expected)
    return float(abs(observed - expected) / scale) if scale else float(abs(observed))


def _exact_outcome(result) -> Outcome:
    """FiniteCheckResult / OdeCheckResult as an Outcome with exact-zero tolerance."""
    return Outcome(result.success, {"failed_index": result.failed_index, "residual": result.residual or "0"},
                   0.0, asdict(result))


def _max_outcome(errors: Sequence[float], tolerance: float, details: Optional[Dict] = None) -> Outcome:
    worst = float(max(errors)) if errors else 0.0
    return Outcome(worst <= tolerance, {"max": worst, "values": list(errors)}, tolerance, details or {})


def _k_values(config: SuiteConfig, default: Sequence[int]) -> List[int]:
    return list(config.k_values) if config.k_values else list(default)


def _bounds(config: SuiteConfig):
    return min(config.bounds), max(config.bounds)


def _siegel_points(config: SuiteConfig, count: Optional[int] = None, offset: int = 0) -> List[SiegelPoint]:
    rng = np.random.default_rng(config.seed + offset)
    return [random_point(rng) for _ in range(count or config.points)]


def _jacobi_points(config: SuiteConfig, count: Optional[int] = None, offset: int = 0):
    rng = np.random.default_rng(config.seed + offset)
    return [random_jacobi_point(rng) for _ in range(count or config.points)]


@lru_cache(maxsize=None)
def siegel_family(bound: int, cache_dir: str) -> CosetFamily:
    """Cached family if a cache file exists (validated on read), else a fresh enumeration."""
    cache = CosetCache(cache_dir)
    if cache.path(bound).exists():
        return cache.read(bound)
    return coset_reps(bound)


@lru_cache(maxsize=None)
def jacobi_family(bound: int, cache_dir: str) -> JacobiCosetFamily:
    cache = JacobiCosetCache(cache_dir)
    if cache.path(bound).exists():
        return cache.read(bound)
    return jacobi_cosets(bound)


# exact-h1 -----------------------------------------------------------------

@register("exact-h1", "quartic operator on the four hypergeometric h_1 solutions (finite window, exact)")
def exact_h1_checks(config: SuiteConfig) -> List[Check]:
    checks = []
    for name, spec in indefinite_h1_specs().items():
        checks.append(Check(
            f"quartic-h1/{name}", "indefinite-h1-quartic",
            lambda spec=spec: _exact_outcome(finite_check(quartic_h1_operator(), spec)),
            {"solution": name, "operator": "quartic-h1"},
        ))
    return checks


# exact-confluent ----------------------------------------------------------

def _retained_check(kind: str, k: int, u: float, tolerance: float) -> Outcome:
    fn = retained_phi(k) if kind == "phi" else retained_psi(k)
    residual = confluent_residual(kind, k, fn, u)
    return Outcome(residual <= tolerance, {"relative_residual": residual}, tolerance)


@register("exact-confluent", "confluent and Whittaker-type ODEs on the catalog solutions (formal series, exact)")
def exact_confluent_checks(config: SuiteConfig) -> List[Check]:
    checks = []
    for solution in confluent_solutions(config.order):
        kind = solution.equation.split("-", 1)[1]
        checks.append(Check(
            f"confluent/{solution.name}", f"confluent-{kind}-ode",
            lambda s=solution, kind=kind: _exact_outcome(confluent_ode_check(kind, ALPHA, BETA, s.series)),
            {"solution": solution.name, "equation": solution.equation, "order": config.order},
        ))
        checks.append(Check(
            f"symmetry/{solution.name}", "alpha-beta-reflection",
            lambda s=solution, kind=kind: _exact_outcome(symmetry_check(kind, ALPHA, BETA, s.series)),
            {"solution": solution.name, "equation": solution.equation},
        ))
    for solution in whittaker_m_solutions(config.order):
        checks.append(Check(
            f"whittaker-phi/{solution.name}", "whittaker-phi-ode",
            lambda s=solution: _exact_outcome(phi_whittaker_ode_check(s.series, ALPHA, BETA)),
            {"solution": solution.name, "order": config.order},
        ))
    tolerance = config.tolerance(1e-10)
    for k in _k_values(config, (5, -5)):
        for kind in ("phi", "psi"):
            checks.append(Check(
                f"retained-{kind}/k={k}", f"confluent-{kind}-ode",
                lambda kind=kind, k=k: _retained_check(kind, k, 1.5, tolerance),
                {"k": k, "u": 1.5},
            ))
    return checks


# recursions ---------------------------------------------------------------

def _tower_outcome(tower) -> Outcome:
    nonzero = [n for n, residual in enumerate(tower.residuals()) if not residual.is_zero()]
    return Outcome(not nonzero, {"nonzero_residuals": nonzero}, 0.0, {"depth": len(tower) - 1, "seed": tower.seed})


def _h_tower_outcome(name: str, spec, depth: int, order: int) -> Outcome:
    tower = build_h_tower(pfq_formal(spec, order), depth, seed=name)
    first, second = companion_residuals(tower.terms[0], tower.terms[1])
    nonzero = [n for n, residual in enumerate(tower.residuals()) if not residual.is_zero()]
    passed = not nonzero and first.is_zero() and second.is_zero()
    return Outcome(passed, {"nonzero_residuals": nonzero, "companion_first_zero": first.is_zero(),
                            "companion_second_zero": second.is_zero()}, 0.0, {"depth": depth})


def _degree_outcome(k: int, depth: int) -> Outcome:
    alpha, beta = rf(Fraction(1, 2)), rf(Fraction(2 * k - 1, 2))
    hypotheses = growth_hypotheses(depth, alpha, beta)
    tower = build_g_tower(LaurentSeries.monomial("u", SymbolicExponent(1 - k)), depth, alpha, beta, "laurent")
    problems = check_degree_bounds(tower, hypotheses.valuation_bound)
    return Outcome(hypotheses.holds and not problems and tower.is_exact_solution(),
                   {"hypothesis_failures": hypotheses.failures, "degree_problems": problems},
                   0.0, {"valuation_bound": hypotheses.valuation_bound, "k": k})


@register("recursions", "g- and h-recursion towers: exact residuals, companion relations, growth-lemma hypotheses")
def recursion_checks(config: SuiteConfig) -> List[Check]:
    depth = config.depth
    checks = [Check(
        "g-tower/laurent-formal", "g-recursion",
        lambda: _tower_outcome(build_g_tower(LaurentSeries.monomial("u", SymbolicExponent(1, -1)),
                                             depth, seed="laurent-formal")),
        {"seed": "u^(1-k)", "depth": depth},
    )]
    for solution in confluent_solutions(config.order):
        checks.append(Check(
            f"g-tower/{solution.name}", "g-recursion",
            lambda s=solution: _tower_outcome(build_g_tower(s.series, depth, seed=s.name)),
            {"seed": solution.name, "depth": depth},
        ))
    for name, spec in indefinite_h1_specs().items():
        checks.append(Check(
            f"h-tower/{name}", "h-recursion-companion",
            lambda name=name, spec=spec: _h_tower_outcome(name, spec, depth, config.order),
            {"seed": name, "depth": depth, "order": config.order},
        ))
    for k in _k_values(config, (5, -5)):
        checks.append(Check(f"growth-hypotheses/k={k}", "growth-lemma",
                            lambda k=k: _degree_outcome(k, depth), {"k": k, "depth": depth}))
        for kind in ("M", "W"):
            checks.append(Check(
                f"functional-tower/{kind}/k={k}", "g-recursion",
                lambda kind=kind, k=k: _tower_outcome(build_functional_tower(kind, k, depth)),
                {"k": k, "kind": kind, "depth": depth},
            ))
    return checks


# growth -------------------------------------------------------------------

EXPECTED_GROWTH = {"laurent": "rapid", "M-integral": "rapid", "W-integral": "moderate"}


def _growth_outcome(seed: str, k: int, depth: int) -> Outcome:
    report = growth_diagnostic(seed, k, N=depth)
    expected = EXPECTED_GROWTH[seed]
    return Outcome(report.verdict == expected,
                   {"mean_top_slope": report.parameters["mean_top_slope"], "threshold": report.threshold},
                   report.threshold, {**report.to_dict(), "expected": expected})


@register("growth", "moderate/rapid growth of the positive-definite expansion for three seeds")
def growth_checks(config: SuiteConfig) -> List[Check]:
    checks = []
    for k in _k_values(config, (5, -5)):
        for seed in EXPECTED_GROWTH:
            checks.append(Check(f"growth/{seed}/k={k}", "growth-dichotomy",
                                lambda seed=seed, k=k: _growth_outcome(seed, k, config.growth_depth),
                                {"seed": seed, "k": k, "depth": config.growth_depth}))
    return checks


# ratio-decay --------------------------------------------------------------

def _ratio_outcome(k: int, terms: int, threshold: float) -> Outcome:
    result = coeff_ratio_decay(k, terms)
    final = float(result.final_ratio)
    passed = result.below(threshold) and result.monotone_from is not None
    return Outcome(passed, {"final_ratio": final}, threshold,
                   {"monotone_from": result.monotone_from, "positive_from": result.positive_from,
                    "offset_convention": result.offset_convention, "terms": terms})


@register("ratio-decay", "exact coefficient ratio of two indefinite-case solutions tends to zero")
def ratio_decay_checks(config: SuiteConfig) -> List[Check]:
    threshold = config.tolerance(1e-6)
    return [Check(f"ratio-decay/k={k}", "coefficient-ratio-decay",
                  lambda k=k: _ratio_outcome(k, config.ratio_terms, threshold),
                  {"k": k, "terms": config.ratio_terms})
            for k in _k_values(config, (-2, -5))]


# siegel-operators ---------------------------------------------------------

OMEGA_CASES = ((5, 0.0), (5, -0.5), (-5, 6.5), (-5, 7.0))
POSITIVE_T = ([[1.0, 0.0], [0.0, 1.0]], [[1.0, 0.5], [0.5, 1.0]], [[2.0, 0.5], [0.5, 1.0]])


def _omega_error(k: int, s: float, Z: SiegelPoint, step: float) -> float:
    G = det_Y_power(s)
    eigenvalue = -s * (s - (1.5 - k))
    omega = omega_apply(G, Z, 0.5, k - 0.5, step)
    expected = eigenvalue * G(Z) * np.eye(2)
    return float(np.max(np.abs(omega - expected)) / (abs(G(Z)) * max(1.0, abs(eigenvalue))))


def _omega_outcome(k: int, s: float, points, step: float, tolerance: float) -> Outcome:
    errors = [_omega_error(k, s, Z, step) for Z in points]
    return _max_outcome(errors, tolerance, {"eigenvalue": -s * (s - (1.5 - k))})


def _step_halving_outcome(k: int, s: float, Z: SiegelPoint, step: float) -> Outcome:
    coarse = _omega_error(k, s, Z, step)
    fine = _omega_error(k, s, Z, step / 2)
    ratio = coarse / fine if fine else float("inf")
    return Outcome(ratio >= 8, {"coarse": coarse, "fine": fine, "ratio": ratio}, 8.0, {"step": step})


def _holomorphic_outcome(T, k: int, points, step: float, tolerance: float) -> Outcome:
    G = holomorphic_exponential(T)
    errors = [float(np.max(np.abs(omega_apply(G, Z, k, 0.0, step))) / abs(G(Z))) for Z in points]
    return _max_outcome(errors, tolerance)


def _maass_M_outcome(k: int, points, step: float, tolerance: float) -> Outcome:
    s = 1.5 - k
    G = det_Y_power(s)
    m_errors = [_relative(maass_M(G, 0.5, Z, step), s * (s + 0.5) * G(Z)) for Z in points]
    constant = (1.5 - k) * (2 - k)
    xi_errors = [_relative(xi2(G, k, Z, step), constant) for Z in points]
    return _max_outcome(m_errors + xi_errors, tolerance, {"xi2_constant": constant})


def _two_path_outcome(points, step: float, tolerance: float) -> Outcome:
    T = POSITIVE_T[1]
    exponential = holomorphic_exponential(T)
    G = Evaluator(lambda P: P.det_Y ** 0.7 * exponential(P), "detY^0.7 e(tr TZ)")
    errors = []
    for beta in (0.0, 1.5):
        for Z in points:
            errors.append(_relative(maass_N(G, beta, Z, step), maass_N_direct(G, beta, Z, step)))
    return _max_outcome(errors, tolerance)


def _casimir_outcome(k: int, s: float, points, step: float, tolerance: float) -> Outcome:
    expected_factor = s * (s + 0.5) * (s + k - 1.5) * (s + k - 2)
    G = det_Y_power(s)
    errors = []
    for Z in points:
        value = casimir_C(G, k, Z, step)
        errors.append(float(abs(value - expected_factor * G(Z)) / (abs(G(Z)) * max(1.0, abs(expected_factor)))))
    return _max_outcome(errors, tolerance, {"eigenvalue": expected_factor})


def _cocycle_outcome(config: SuiteConfig, tolerance: float) -> Outcome:
    rng = np.random.default_rng(config.seed + 7)
    k = 5
    exponential = holomorphic_exponential(POSITIVE_T[0])
    G = Evaluator(lambda P: P.det_Y ** 0.3 * exponential(P), "detY^0.3 e(tr Z)")
    errors = []
    for Z in _siegel_points(config, offset=3):
        M1, M2 = random_word(rng, 3), random_word(rng, 3)
        left = slash(slash(G, M1, 0.5, k - 0.5), M2, 0.5, k - 0.5)(Z)
        right = slash(G, M1 @ M2, 0.5, k - 0.5)(Z)
        errors.append(_relative(left, right))
    return _max_outcome(errors, tolerance)


@register("siegel-operators", "Omega, M/N and Casimir operators on det(Y)^s and holomorphic exponentials")
def siegel_operator_checks(config: SuiteConfig) -> List[Check]:
    points = _siegel_points(config, 10)
    step, nested = config.step, config.nested_step
    checks = []
    for k, s in OMEGA_CASES:
        checks.append(Check(f"omega-eigen/k={k}/s={s}", "omega-eigen-identity",
                            lambda k=k, s=s: _omega_outcome(k, s, points, step, config.tolerance(1e-6)),
                            {"k": k, "s": s, "points": len(points), "step": step}))
    checks.append(Check("omega-step-halving/k=5/s=-0.5", "omega-eigen-identity",
                        lambda: _step_halving_outcome(5, -0.5, points[0], 0.04), {"k": 5, "s": -0.5}))
    for index, T in enumerate(POSITIVE_T):
        checks.append(Check(f"holomorphic-annihilation/T{index}", "omega-holomorphic-kernel",
                            lambda T=T: _holomorphic_outcome(T, 5, points, step, config.tolerance(1e-6)),
                            {"T": T, "k": 5}))
    for k in (5, -5):
        checks.append(Check(f"maass-M/k={k}", "maass-M-eigenvalue",
                            lambda k=k: _maass_M_outcome(k, points, step, config.tolerance(1e-6)),
                            {"k": k, "s": 1.5 - k}))
    checks.append(Check("maass-N/two-path", "maass-N-reflection",
                        lambda: _two_path_outcome(points[:3], step, config.tolerance(1e-6)), {"betas": [0.0, 1.5]}))
    kernels = {5: (0.0, -3.5, -0.5), -5: (0.0, 6.5, 7.0)}
    for k, values in kernels.items():
        for s in values:
            checks.append(Check(f"casimir-kernel/k={k}/s={s}", "casimir-kernel",
                                lambda k=k, s=s: _casimir_outcome(k, s, points[:3], nested, config.tolerance(1e-4)),
                                {"k": k, "s": s, "nested_step": nested}))
    checks.append(Check("casimir-control/k=5/s=1", "casimir-kernel",
                        lambda: _casimir_outcome(5, 1.0, points[:3], nested, config.tolerance(1e-3)),
                        {"k": 5, "s": 1.0, "expected_eigenvalue": 27.0}))
    checks.append(Check("slash-cocycle", "slash-action",
                        lambda: _cocycle_outcome(config, config.tolerance(1e-9)), {"k": 5, "word_length": 3}))
    return checks


# eisenstein ---------------------------------------------------------------

def _coset_oracle_outcome(bound: int, exact: bool) -> Outcome:
    """Enumeration against cosets reached by generator words of length <= 8.

    At bound 1 the two sets must agree; at larger bounds short words need not
    reach every coset, so only missing cosets count.
    """
    family = coset_reps(bound)
    keys = family.keys()
    oracle = word_canonical_forms(bound, minor_cap=max(8, 4 * bound * bound + 4))
    missing = len(oracle - set(keys))
    extra = len(set(keys) - oracle)
    duplicates = len(keys) - len(set(keys))
    distinct_minors = len({plucker_key(c, d) for c, d in zip(family.C, family.D)}) == len(keys)
    passed = missing == 0 and duplicates == 0 and distinct_minors and (extra == 0 or not exact)
    return Outcome(passed, {"missing": missing, "extra": extra, "duplicates": duplicates,
                            "distinct_minors": distinct_minors}, 0.0,
                   {"count": len(keys), "oracle_count": len(oracle), "word_length": 8, "exact": exact})


def _coset_structure_outcome(low: int, high: int) -> Outcome:
    small, large = coset_reps(low), coset_reps(high)
    nested = set(small.keys()) <= set(large.keys())
    completions = small.matrices()
    bottoms = all(np.array_equal(M.C, C) and np.array_equal(M.D, D)
                  for M, C, D in zip(completions, small.C, small.D))
    identity = len(coset_reps(0)) == 1
    return Outcome(nested and bottoms and identity,
                   {"nested": nested, "completions_match": bottoms, "bound_zero_single": identity}, 0.0,
                   {"low": low, "high": high, "counts": [len(small), len(large)]})


def _identity_family_outcome(points, tolerance: float) -> Outcome:
    family = coset_reps(0)
    errors = [_relative(eisenstein_P(5, s, Z, family), Z.det_Y ** s) for Z in points for s in (0.0, 1.5)]
    return _max_outcome(errors, tolerance)


def _maass_identity_outcome(family: CosetFamily, points, tolerance: float) -> Outcome:
    errors = []
    for k, s in ((5, 0.5), (-5, 6.5)):
        for Z in points:
            errors.append(_relative(eisenstein_P(k, s, Z, family),
                                    Z.det_Y ** s * maass_eisenstein(s + 0.5, s + k - 0.5, Z, family)))
    return _max_outcome(errors, tolerance)


def _kohnen_identity_outcome(family: CosetFamily, points, tolerance: float) -> Outcome:
    errors = []
    for Z in points:
        errors.append(_relative(kohnen_eisenstein(1 - 5, 4.5, Z, family),
                                Z.det_Y ** 4.5 * eisenstein_P(5, 0.0, Z, family)))
        errors.append(_relative(kohnen_eisenstein(1 + 5, 1.0, Z, family),
                                Z.det_Y ** -5.5 * eisenstein_P(-5, 6.5, Z, family)))
    return _max_outcome(errors, tolerance)


def _invariance_ladder(config: SuiteConfig, low: CosetFamily, high: CosetFamily, tolerance: float) -> Outcome:
    rng = np.random.default_rng(config.seed + 11)
    Z = _siegel_points(config, 1, offset=5)[0]
    M = random_word(rng, 2)
    scale = abs(eisenstein_P(5, 0.0, Z, high))
    ladder = LadderResult(low.bound, high.bound, invariance_defect(5, 0.0, Z, M, low) / scale,
                          invariance_defect(5, 0.0, Z, M, high) / scale, 2.0, tolerance)
    outcome = _ladder_outcome(ladder)
    outcome.details["word"] = M.to_list()
    return outcome


def _xi2_ladder(points, low: CosetFamily, high: CosetFamily, step: float, tolerance: float) -> Outcome:
    def size(family: CosetFamily) -> float:
        G = eisenstein_P_evaluator(5, 0.0, family)
        return max(abs(xi2(G, 5, Z, step)) / abs(G(Z)) for Z in points)
    return _ladder_outcome(LadderResult(low.bound, high.bound, size(low), size(high), 2.0, tolerance))


def _xi2_proportional(points, family: CosetFamily, step: float, tolerance: float) -> Outcome:
    G = eisenstein_P_evaluator(-5, 6.5, family)
    a = [xi2(G, -5, Z, step) for Z in points]
    b = [holomorphic_eisenstein(8, Z, family) for Z in points]
    fit = proportionality_spread(a, b)
    expected = (1.5 - (-5)) * (2 - (-5))
    return Outcome(fit["spread"] <= tolerance, {"spread": fit["spread"]}, tolerance,
                   {"scalar": fit["scalar"], "expected_scalar": expected,
                    "scalar_deviation": _relative(fit["scalar"], expected)})


def _ray_growth(family: CosetFamily, limit: float) -> Outcome:
    ts = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
    slopes = ray_growth_slopes(5, 0.0, family, ts)
    worst = max(abs(slope) for slope in slopes)
    return Outcome(bool(np.isfinite(worst)) and worst <= limit, {"max_abs_slope": worst}, limit,
                   {"slopes": slopes, "ts": ts})


@register("eisenstein", "coset enumeration and truncated Eisenstein-type sums on H_2")
def eisenstein_checks(config: SuiteConfig) -> List[Check]:
    low_bound, high_bound = _bounds(config)
    low = siegel_family(low_bound, config.cache_dir)
    high = siegel_family(high_bound, config.cache_dir)
    points = _siegel_points(config)
    step = config.step
    return [
        Check("cosets/oracle/bound=1", "coset-enumeration", lambda: _coset_oracle_outcome(1, True), {"bound": 1}),
        Check("cosets/oracle/bound=2", "coset-enumeration", lambda: _coset_oracle_outcome(2, False), {"bound": 2}),
        Check("cosets/structure", "coset-enumeration", lambda: _coset_structure_outcome(1, 2), {"bounds": [1, 2]}),
        Check("P/identity-family", "eisenstein-P", lambda: _identity_family_outcome(points, config.tolerance(1e-12)),
              {"bound": 0}),
        Check("P/maass-eisenstein-identity", "eisenstein-P",
              lambda: _maass_identity_outcome(low, points, config.tolerance(1e-12)), {"bound": low_bound}),
        Check("P/kohnen-identities", "kohnen-eisenstein",
              lambda: _kohnen_identity_outcome(low, points, config.tolerance(1e-10)), {"bound": low_bound}),
        Check("P/invariance-ladder", "eisenstein-P-invariance",
              lambda: _invariance_ladder(config, low, high, config.tolerance(1e-8)),
              {"k": 5, "s": 0.0, "bounds": [low_bound, high_bound]}),
        Check("xi2/ladder/P_(5,0)", "xi2-annihilation",
              lambda: _xi2_ladder(points, low, high, step, config.tolerance(1e-6)),
              {"k": 5, "s": 0.0, "bounds": [low_bound, high_bound]}),
        Check("xi2/proportional/P_(-5,6.5)", "xi2-holomorphic-image",
              lambda: _xi2_proportional(points, low, step, config.tolerance(5e-2)),
              {"k": -5, "s": 6.5, "weight": 8, "bound": low_bound}),
        Check("P/ray-growth", "moderate-growth", lambda: _ray_growth(low, 10.0), {"k": 5, "bound": low_bound}),
    ]


# jacobi-operators ---------------------------------------------------------

JACOBI_GENERATORS = (
    JacobiGroupElement(1, 1, 0, 1), JacobiGroupElement(0, -1, 1, 0),
    JacobiGroupElement(1, 0, 0, 1, 1, 0), JacobiGroupElement(1, 0, 0, 1, 0, 1),
    JacobiGroupElement(1, -1, 0, 1), JacobiGroupElement(0, 1, -1, 0),
)


def _monomial(n: int, r: int, y_profile: Callable[[float], complex] = lambda y: 1.0, name: str = "q^n zeta^r"):
    return JacobiEvaluator(lambda P: y_profile(P.y) * np.exp(2j * np.pi * (n * P.tau + r * P.z)), name,
                           {"n": n, "r": r})


def _class_term(tag: str, n: int, r: int, m: int, k: int) -> JacobiEvaluator:
    return _monomial(n, r, lambda y: profile(tag, n, r, m, k, y), f"{tag}({n},{r})")


def _random_jacobi_element(rng: np.random.Generator, length: int) -> JacobiGroupElement:
    element = JacobiGroupElement(1, 0, 0, 1)
    for index in rng.integers(0, len(JACOBI_GENERATORS), size=length):
        element = element @ JACOBI_GENERATORS[index]
    return element


def _jacobi_oracle_outcome() -> Outcome:
    family = jacobi_cosets(1)
    keys = family.keys()
    oracle = brute_force_jacobi_keys(1)
    return Outcome(set(keys) == oracle and len(keys) == len(set(keys)) and len(jacobi_cosets(0)) == 1,
                   {"count": len(keys), "oracle_count": len(oracle)}, 0.0)


def _jacobi_cocycle_outcome(config: SuiteConfig, tolerance: float) -> Outcome:
    rng = np.random.default_rng(config.seed + 13)
    phi = _monomial(1, 1, lambda y: y ** 0.3, "y^0.3 q zeta")
    k, m = 5, 1
    errors = []
    for P in _jacobi_points(config, offset=2):
        A1, A2 = _random_jacobi_element(rng, 3), _random_jacobi_element(rng, 3)
        errors.append(_relative(skew_slash(skew_slash(phi, A1, k, m), A2, k, m)(P),
                                skew_slash(phi, A1 @ A2, k, m)(P)))
        errors.append(_relative(holo_slash(holo_slash(phi, A1, k, m), A2, k, m)(P),
                                holo_slash(phi, A1 @ A2, k, m)(P)))
    return _max_outcome(errors, tolerance)


def _bridge_outcome(points, family: JacobiCosetFamily, tolerance: float) -> Outcome:
    k, m = 5, 1
    errors = [_relative(P.y ** (k - 0.5) * skew_eisenstein(k, m, 0.0, P, family, "skew-1"),
                        skew_eisenstein(1 - k, m, k - 0.5, P, family, "holomorphic")) for P in points]
    return _max_outcome(errors, tolerance)


def _heat_kernel_outcome(points, step: float, tolerance: float) -> Outcome:
    m = 1
    errors = []
    for n, r in ((1, 2), (0, 1), (-1, 1)):
        tag = classify_fourier_term(n, r, m)
        phi = _monomial(n, r) if tag == "c0" else _class_term("c+", n, r, m, 5)
        for P in points:
            scale = abs(phi(P)) * 4 * np.pi ** 2 * max(1, r * r + 4 * m * abs(n))
            errors.append(float(abs(heat_L(phi, m, P, step)) / scale))
    y_phi = JacobiEvaluator(lambda P: P.y, "y")
    errors += [_relative(heat_L(y_phi, m, P, step), 4 * np.pi * m) for P in points]
    return _max_outcome(errors, tolerance)


def _harmonic_terms_outcome(points, step: float, nested: float, tolerance: float) -> Outcome:
    k, m = -5, 1
    errors = {}
    for tag, (n, r) in (("c0", (1, 2)), ("c+", (0, 1)), ("c-", (1, 0))):
        phi = _class_term(tag, n, r, m, k)
        errors[tag] = max(float(abs(casimir_sk(phi, k, m, P, step, nested)) / abs(phi(P))) for P in points)
    worst = max(errors.values())
    return Outcome(worst <= tolerance, errors, tolerance, {"k": k, "m": m})


def _fourier_extraction_outcome(tolerance: float) -> Outcome:
    k, m = -5, 1
    terms = {("c0", 1, 2): 0.8, ("c+", 0, 1): -0.5 + 0.25j, ("c-", 1, 0): 0.3}
    pieces = [(c, _class_term(tag, n, r, m, k)) for (tag, n, r), c in terms.items()]
    phi = JacobiEvaluator(lambda P: sum(c * piece(P) for c, piece in pieces), "harmonic combination")
    errors = {}
    y = 1.1
    for (tag, n, r), c in terms.items():
        extracted = fourier_coeff_jacobi(phi, n, r, y) / profile(tag, n, r, m, k, y)
        errors[f"{tag}({n},{r})"] = _relative(extracted, c)
    ratio = profile_ratio_defect(phi, 0, 1, m, k, 1.0, 1.5)
    errors["c+ profile ratio"] = ratio
    worst = max(errors.values())
    return Outcome(worst <= tolerance, errors, tolerance, {"y": y})


def _maass_jacobi_outcome(points, step: float, nested: float, tolerance: float) -> Outcome:
    k, m = 5, 1
    phi = JacobiEvaluator(lambda P: P.y, "y")
    errors = [_relative(maass_jacobi_casimir(phi, k, m, P, step, nested), (2 * k - 1) * P.y / (8j * np.pi * m))
              for P in points]
    return _max_outcome(errors, tolerance)


def _heat_ladder(points, low: JacobiCosetFamily, high: JacobiCosetFamily, step: float, tolerance: float) -> Outcome:
    def size(family: JacobiCosetFamily) -> float:
        phi = skew_eisenstein_evaluator(5, 1, family, "skew-1")
        return max(abs(heat_L(phi, 1, P, step)) / abs(phi(P)) for P in points)
    return _ladder_outcome(LadderResult(low.bound, high.bound, size(low), size(high), 2.0, tolerance))


def _casimir_ladder(points, low: JacobiCosetFamily, high: JacobiCosetFamily, step: float, nested: float,
                    tolerance: float) -> Outcome:
    def size(family: JacobiCosetFamily) -> float:
        psi = skew_eisenstein_evaluator(-5, 1, family, "skew-psi")
        return max(abs(casimir_sk(psi, -5, 1, P, step, nested)) / abs(psi(P)) for P in points)
    return _ladder_outcome(LadderResult(low.bound, high.bound, size(low), size(high), 2.0, tolerance))


def _xi_sk_outcome(points, family: JacobiCosetFamily, step: float, tolerance: float) -> Outcome:
    k, m = -5, 1
    seed = JacobiEvaluator(lambda P: P.y ** (1.5 - k), "y^(3/2-k)")
    constant_errors = [_relative(xi_sk(seed, k, m, step)(P), 1.5 - k) for P in points]
    psi = skew_eisenstein_evaluator(k, m, family, "skew-psi")
    image = xi_sk(psi, k, m, step)
    fit = proportionality_spread([image(P) for P in points],
                                 [holomorphic_jacobi_eisenstein(3 - k, m, P, family) for P in points])
    passed = max(constant_errors) <= 1e-6 and fit["spread"] <= tolerance
    return Outcome(passed, {"spread": fit["spread"], "seed_constant_error": max(constant_errors)}, tolerance,
                   {"scalar": fit["scalar"], "expected_scalar": 1.5 - k})


def _nonvanishing_outcome(low: JacobiCosetFamily, high: JacobiCosetFamily, quadrature: int) -> Outcome:
    values = [fourier_coeff_jacobi(skew_eisenstein_evaluator(5, 1, family, "skew-1"), 0, 0, 1.0, N=quadrature)
              for family in (low, high)]
    drift = abs(values[1] - values[0])
    return Outcome(abs(values[1]) > 10 * drift, {"coefficient": values[1], "drift": drift}, None,
                   {"bounds": [low.bound, high.bound], "values": values})


@register("jacobi-operators", "Jacobi slash actions, heat/Casimir/xi operators and Fourier-coefficient classes")
def jacobi_operator_checks(config: SuiteConfig) -> List[Check]:
    low_bound, high_bound = _bounds(config)
    low = jacobi_family(low_bound, config.cache_dir)
    high = jacobi_family(high_bound, config.cache_dir)
    drift_low = jacobi_family(max(high_bound - 2, 0), config.cache_dir)
    points = _jacobi_points(config)
    step, nested = config.step, config.nested_step
    quadrature = min(config.quadrature_nodes, 32)
    return [
        Check("cosets/oracle/bound=1", "jacobi-coset-enumeration", _jacobi_oracle_outcome, {"bound": 1}),
        Check("slash/cocycle", "jacobi-slash", lambda: _jacobi_cocycle_outcome(config, config.tolerance(1e-9)),
              {"k": 5, "m": 1}),
        Check("series/skew-holomorphic-bridge", "skew-holomorphic-bridge",
              lambda: _bridge_outcome(points, low, config.tolerance(1e-6)), {"k": 5, "m": 1, "bound": low_bound}),
        Check("heat/kernel", "heat-operator", lambda: _heat_kernel_outcome(points, step, config.tolerance(1e-7)),
              {"m": 1}),
        Check("casimir-sk/harmonic-terms", "skew-casimir-kernel",
              lambda: _harmonic_terms_outcome(points[:3], step, nested, config.tolerance(1e-4)), {"k": -5, "m": 1}),
        Check("fourier/extraction", "fourier-skew-expansion",
              lambda: _fourier_extraction_outcome(config.tolerance(1e-6)), {"k": -5, "m": 1}),
        Check("maass-jacobi-casimir/y", "maass-jacobi-casimir",
              lambda: _maass_jacobi_outcome(points[:3], step, nested, config.tolerance(1e-4)), {"k": 5, "m": 1}),
        Check("heat/ladder/skew-1", "heat-annihilation",
              lambda: _heat_ladder(points, low, high, step, config.tolerance(1e-6)),
              {"k": 5, "m": 1, "bounds": [low_bound, high_bound]}),
        Check("casimir-sk/ladder/skew-psi", "skew-casimir-kernel",
              lambda: _casimir_ladder(points[:3], low, high, step, nested, config.tolerance(1e-4)),
              {"k": -5, "m": 1, "bounds": [low_bound, high_bound]}),
        Check("xi-sk/proportional", "xi-sk-holomorphic-image",
              lambda: _xi_sk_outcome(points, low, step, config.tolerance(5e-2)),
              {"k": -5, "m": 1, "weight": 8, "bound": low_bound}),
        Check("fourier/nonvanishing-c(0,0)", "nonvanishing",
              lambda: _nonvanishing_outcome(drift_low, high, quadrature),
              {"k": 5, "m": 1, "bounds": [drift_low.bound, high_bound], "nodes": quadrature}),
    ]


# kohnen-limit -------------------------------------------------------------

def _shape_outcome(points, deltas, tolerance: float) -> Outcome:
    m = 1
    psi = _monomial(1, 1)
    errors, zero = [], []
    for P in points:
        value = psi(P)
        record = kohnen_limit(lambda tau, z, y_p: value * mpmath.exp(-2 * mpmath.pi * m * y_p),
                              m, P.tau, P.z, deltas)
        errors.append(_relative(record.limit, psi(P)))
        zero.append(abs(kohnen_limit(lambda tau, z, y_p: 0.0, m, P.tau, P.z, deltas).limit))
    return _max_outcome(errors + zero, tolerance)


def _rank_one_outcome(points, deltas, tolerance: float) -> Outcome:
    results = [rank_one_limit_check(-5, 1, 1, 1, 0.0, 1.0, P.tau, P.z, deltas) for P in points]
    errors = [r["relative_error"] for r in results]
    return _max_outcome(errors, tolerance, {"records": [r["record"].to_dict() for r in results]})


def _flagship_outcome(points, siegel: CosetFamily, jacobi: JacobiCosetFamily, deltas, nodes: int,
                      tolerance: float, limit_tolerance: float) -> Outcome:
    """Limit of the m = 1 trapezoid slice of det(Y)^{k-1/2} P_{5,0}, against skew Eisenstein values.

    The unfolded closed form of the same coefficient runs alongside on the
    extended grid as a cross-check; it does not enter the verdict.
    """
    k, m = 5, 1
    F = Evaluator(lambda P: P.det_Y ** (k - 0.5) * eisenstein_P(k, 0.0, P, siegel), f"det(Y)^{k - 0.5} P_({k},0)")
    slice_m = FourierJacobiSlice(F, m, nodes)
    records = [kohnen_limit(slice_m, m, P.tau, P.z, deltas, limit_tolerance) for P in points]
    skew = [P.y ** (k - 0.5) * skew_eisenstein(k, m, 0.0, P, jacobi, "skew-1") for P in points]
    fit = proportionality_spread([record.limit for record in records], skew)
    converged = all(record.converged for record in records)

    unfolded = UnfoldedFourierJacobi.from_family(k, 0.0, m, siegel)
    extended = delta_grid(EXTENDED_DELTA_MAX)
    unfolded_records = [kohnen_limit(unfolded, m, P.tau, P.z, extended, limit_tolerance) for P in points]
    termwise = [unfolded.limit(P.tau, P.z) for P in points]
    cross_check = {
        "unfolded_vs_termwise": max(_relative(r.limit, t) for r, t in zip(unfolded_records, termwise)),
        "trapezoid_vs_unfolded": max(_relative(r.limit, t) for r, t in zip(records, termwise)),
    }
    passed = converged and fit["spread"] <= tolerance
    return Outcome(passed, {"spread": fit["spread"], "converged": converged,
                            "max_cauchy_spread": max(r.spread for r in records),
                            "max_extrapolation_spread": max(r.extrapolation_spread for r in records)},
                   tolerance,
                   {"scalar": fit["scalar"], "quadrature_nodes": nodes, "cross_check": cross_check,
                    "orbits": len(unfolded.orbits.C), "fixed_cosets": unfolded.orbits.fixed,
                    "records": [r.to_dict() for r in records]})


def _quadrature_outcome(family: CosetFamily, tolerance: float) -> Outcome:
    F = eisenstein_P_evaluator(5, 0.0, family)
    tau, z, y_p = complex(0.1, 1.1), complex(0.05, 0.1), 1.2
    coarse = fourier_jacobi_coeff(F, 1, tau, z, y_p, N=32)
    fine = fourier_jacobi_coeff(F, 1, tau, z, y_p, N=64)
    error = _relative(coarse, fine)
    return Outcome(error <= tolerance, {"relative_change": error}, tolerance,
                   {"N": [32, 64], "values": [coarse, fine], "bound": family.bound})


@register("kohnen-limit", "Kohnen's limit process on Fourier-Jacobi slices")
def kohnen_limit_checks(config: SuiteConfig) -> List[Check]:
    low_bound, high_bound = _bounds(config)
    siegel = siegel_family(high_bound, config.cache_dir)
    siegel_low = siegel_family(low_bound, config.cache_dir)
    jacobi = jacobi_family(high_bound, config.cache_dir)
    points = _jacobi_points(config, max(config.points, 5), offset=17)
    deltas = delta_grid(config.delta_max)
    return [
        Check("limit/holomorphic-shape-and-zero", "kohnen-limit",
              lambda: _shape_outcome(points[:3], deltas, config.tolerance(1e-9)), {"m": 1}),
        Check("limit/rank-one-closed-form", "rank-one-limit",
              lambda: _rank_one_outcome(points[:3], delta_grid(max(config.delta_max, EXTENDED_DELTA_MAX)),
                                        config.tolerance(1e-4)),
              {"k": -5, "m": 1, "n": 1, "r": 1, "c2": 1.0}),
        Check("limit/flagship/k=5/m=1", "kohnen-limit-eisenstein",
              lambda: _flagship_outcome(points, siegel, jacobi, deltas, config.quadrature_nodes,
                                        config.tolerance(5e-2), config.tolerance(1e-3)),
              {"k": 5, "m": 1, "siegel_bound": high_bound, "jacobi_bound": high_bound,
               "delta_max": config.delta_max}),
        Check("fourier-jacobi/quadrature-refinement", "fourier-jacobi-coefficient",
              lambda: _quadrature_outcome(siegel_low, config.tolerance(1e-3)), {"k": 5, "m": 1}),
    ]


# special-asymptotics ------------------------------------------------------

def _asymptotic_height(first_correction: float) -> float:
    """Smallest tested y, at least 40, with |first correction| / y <= 0.04."""
    return max(40.0, 25.0 * abs(first_correction))


def _whittaker_ratio(nu: float, mu: float, tolerance: float) -> Outcome:
    y = _asymptotic_height(mu * mu - (nu - 0.5) ** 2)
    ratio = whittaker("W", nu, mu, y) / (y ** nu * np.exp(-y / 2))
    return Outcome(abs(ratio - 1) <= tolerance, {"ratio_minus_one": ratio - 1}, tolerance, {"y": y})


def _gamma_ratio(a: float, tolerance: float) -> Outcome:
    y = _asymptotic_height(a - 1)
    ratio = incomplete_gamma(a, y) / (y ** (a - 1) * np.exp(-y))
    return Outcome(abs(ratio - 1) <= tolerance, {"ratio_minus_one": ratio - 1}, tolerance, {"y": y})


H_PAIRS = ((-1, -1.0), (0, -0.5), (-3, -2.0), (-5, -1.0), (1, -0.5), (-2, -3.0))


def _h_identity(tolerance: float) -> Outcome:
    errors = {f"k={k},w={w}": _relative(H_function(w, k), H_function_quadrature(w, k)) for k, w in H_PAIRS}
    worst = max(errors.values())
    return Outcome(worst <= tolerance, errors, tolerance)


def _closed_forms(tolerance: float) -> Outcome:
    one_f_one = HypergeometricSpec((rf(1),), (rf(2),), ArgumentScale(Fraction(1)), variable="u")
    errors = {
        "M_(0,1/2)(2) = 2 sinh 1": _relative(whittaker("M", 0.0, 0.5, 2.0), 2 * np.sinh(1.0)),
        "1F1(1;2;1) = e - 1": _relative(pfq_numeric(one_f_one, 1.0), np.e - 1),
        "partial sum oracle": _relative(float(pfq_partial_sum([1], [2], 1.0, 60)), np.e - 1),
        "W ODE residual": whittaker_ode_residual("W", -1.0, 0.5, 5.0),
        "M ODE residual": whittaker_ode_residual("M", 0.0, 0.5, 3.0),
    }
    worst = max(errors.values())
    return Outcome(worst <= tolerance, errors, tolerance)


def _rank_one_scale(k: int, u: float, tolerance: float) -> Outcome:
    expected = u ** (-k / 2) * whittaker("W", (1 - k) / 2, (k - 1) / 2, 4 * np.pi * u)
    error = _relative(rank_one_retained(k, u, 0.0, 1.0), expected)
    return Outcome(error <= tolerance, {"relative_error": error}, tolerance, {"k": k, "u": u})


@register("special-asymptotics", "Whittaker and incomplete Gamma asymptotics, the H-function, closed forms")
def special_asymptotic_checks(config: SuiteConfig) -> List[Check]:
    tolerance = config.tolerance(5e-2)
    checks = [
        Check("whittaker-W/nu=-1/mu=0.5", "whittaker-growth", lambda: _whittaker_ratio(-1.0, 0.5, tolerance),
              {"nu": -1.0, "mu": 0.5}),
        Check("incomplete-gamma/a=-2", "incomplete-gamma-growth", lambda: _gamma_ratio(-2.0, tolerance), {"a": -2.0}),
    ]
    for k in _k_values(config, (5, -5)):
        nu, mu = (1 - k) / 2, (k - 1) / 2
        checks.append(Check(f"whittaker-W/k={k}", "whittaker-growth",
                            lambda nu=nu, mu=mu: _whittaker_ratio(nu, mu, tolerance), {"k": k, "nu": nu, "mu": mu}))
        checks.append(Check(f"incomplete-gamma/k={k}", "incomplete-gamma-growth",
                            lambda k=k: _gamma_ratio(2.0 - k, tolerance), {"k": k, "a": 2 - k}))
        checks.append(Check(f"rank-one-scale/k={k}", "rank-one-coefficient",
                            lambda k=k: _rank_one_scale(k, 0.7, config.tolerance(1e-10)), {"k": k}))
    checks += [
        Check("H-function/quadrature", "H-function-identity", lambda: _h_identity(config.tolerance(1e-9)),
              {"pairs": [list(p) for p in H_PAIRS]}),
        Check("closed-forms", "special-function-closed-forms", lambda: _closed_forms(config.tolerance(1e-10))),
    ]
    return checks


# entry points -------------------------------------------------------------

def describe_suites() -> List[Dict[str, str]]:
    return [{"name": name, "description": REGISTRY[name].description} for name in SUITES if name in REGISTRY]


def build_checks(name: str, config: SuiteConfig) -> List[Check]:
    try:
        entry = REGISTRY[name]
    except KeyError:
        raise UnknownSuiteError(f"unknown suite '{name}', expected one of {', '.join(SUITES)}") from None
    if config.suite != name:
        raise ConfigError(f"config is for suite '{config.suite}', not '{name}'")
    checks = entry.build(config)
    logger.info(f"Suite '{name}': {len(checks)} checks")
    return checks


async def run_suite_async(name: str, config: SuiteConfig,
                          writer: Optional[ReportWriter] = None) -> VerificationReport:
    logger.info(f"Starting suite '{name}'")
    checks = build_checks(name, config)
    result = await VerificationPipeline().run(checks)
    report = VerificationReport(tool_version=__version__, config=config, checks=result.records,
                                summary=summarize(name, result.records))
    (writer or ReportWriter(config.out)).write(report)
    logger.info(f"Suite '{name}' finished: {report.summary.verdict}")
    return report


def run_suite(name: str, config: SuiteConfig) -> VerificationReport:
    """Run every check of the suite, write the JSON report and return it."""
    return asyncio.run(run_suite_async(name, config))


def cache_cosets(kind: str, bound: int, path: str) -> int:
    """Write the coset family of the given kind and bound below `path`; returns the count."""
    if bound < 0:
        raise ConfigError(f"bound must be non-negative, got {bound}")
    if kind == "siegel":
        family = coset_reps(bound)
        CosetCache(path).write(family)
    elif kind == "jacobi":
        family = jacobi_cosets(bound)
        JacobiCosetCache(path).write(family)
    else:
        raise ConfigError(f"unknown coset kind '{kind}', expected siegel or jacobi")
    return len(family)
