"""The g_n and h_n coefficient recursions and their towers.

Positive-definite case:

    4(n+1)^2 u g_{n+1} + u g_n'' + 2(2n+alpha+beta) g_n' + (2(alpha-beta) - u) g_n = 0

Indefinite case:

    (n+2)(n+1) h_{n+2} + 4 v h_n'' + 4(alpha+beta+n) h_n' - h_n = 0
    (beta - alpha) h_0 = 2 v h_1' + (alpha + beta) h_1
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import mpmath

from ..algebra.field import RationalFunctionK, Scalar, SymbolicExponent, rf
from ..algebra.series import LaurentSeries
from ..errors import DegenerateParameterError, DomainError
from ..odes.checks import ALPHA, BETA, companion_h0_operator

logger = logging.getLogger(__name__)

POSITIVE_DEFINITE = "positive-definite"
INDEFINITE = "indefinite"


def _g_combination(g, n: int, alpha, beta):
    """u g'' + 2(2n+alpha+beta) g' + (2(alpha-beta) - u) g."""
    return (g.nth_derivative(2).shift(1)
            + g.derivative().scale(2 * (2 * n + alpha + beta))
            + g.scale(2 * (alpha - beta))
            - g.shift(1))


def _h_combination(h, n: int, alpha, beta):
    """4 v h'' + 4(alpha+beta+n) h' - h."""
    return (h.nth_derivative(2).shift(1).scale(4)
            + h.derivative().scale(4 * (alpha + beta + n))
            - h)


def g_step(g_n, n: int, alpha: Scalar = ALPHA, beta: Scalar = BETA):
    """g_{n+1} from g_n. Works on LaurentSeries and on FunctionalRung alike."""
    alpha, beta = rf(alpha), rf(beta)
    return _g_combination(g_n, n, alpha, beta).shift(-1).scale(rf(-1) / (4 * (n + 1) ** 2))


def g_residual(g_n, g_next, n: int, alpha: Scalar = ALPHA, beta: Scalar = BETA):
    alpha, beta = rf(alpha), rf(beta)
    return g_next.shift(1).scale(4 * (n + 1) ** 2) + _g_combination(g_n, n, alpha, beta)


def h_step(h_n: LaurentSeries, n: int, alpha: Scalar = ALPHA, beta: Scalar = BETA) -> LaurentSeries:
    """h_{n+2} from h_n; the recursion does not involve h_{n+1}."""
    alpha, beta = rf(alpha), rf(beta)
    return _h_combination(h_n, n, alpha, beta).scale(rf(-1) / ((n + 2) * (n + 1)))


def h_residual(h_n: LaurentSeries, h_next2: LaurentSeries, n: int,
               alpha: Scalar = ALPHA, beta: Scalar = BETA) -> LaurentSeries:
    alpha, beta = rf(alpha), rf(beta)
    return h_next2.scale((n + 2) * (n + 1)) + _h_combination(h_n, n, alpha, beta)


def h0_from_h1(h_1: LaurentSeries, alpha: Scalar = ALPHA, beta: Scalar = BETA) -> LaurentSeries:
    alpha, beta = rf(alpha), rf(beta)
    if beta - alpha == 0:
        raise DegenerateParameterError("h_0 is not determined by h_1 when alpha = beta")
    combination = h_1.derivative().shift(1).scale(2) + h_1.scale(alpha + beta)
    return combination.scale(1 / (beta - alpha))


def companion_residuals(h_0: LaurentSeries, h_1: LaurentSeries,
                        alpha: Scalar = ALPHA, beta: Scalar = BETA) -> Tuple[LaurentSeries, LaurentSeries]:
    """Residuals of the two h_0/h_1 relations; both vanish for genuine seeds."""
    alpha, beta = rf(alpha), rf(beta)
    first = h_0.scale(beta - alpha) - (h_1.derivative().shift(1).scale(2) + h_1.scale(alpha + beta))
    second = companion_h0_operator(alpha, beta).apply(h_0) - h_1.scale(alpha - beta)
    return first, second


@dataclass(frozen=True)
class RecursionTower:
    """g_0..g_N (positive-definite) or h_0..h_N (indefinite)."""
    case: str
    alpha: RationalFunctionK
    beta: RationalFunctionK
    terms: Tuple
    seed: str = ""

    def __len__(self) -> int:
        return len(self.terms)

    def rung(self, n: int):
        return self.terms[n]

    def residuals(self) -> List:
        if self.case == POSITIVE_DEFINITE:
            return [g_residual(self.terms[n], self.terms[n + 1], n, self.alpha, self.beta)
                    for n in range(len(self.terms) - 1)]
        return [h_residual(self.terms[n], self.terms[n + 2], n, self.alpha, self.beta)
                for n in range(len(self.terms) - 2)]

    def is_exact_solution(self) -> bool:
        return all(residual.is_zero() for residual in self.residuals())

    def rung_value(self, n: int, x, k_value=None):
        # specialized towers carry constant coefficients, any k will do
        return self.terms[n].evaluate(x, 0 if k_value is None else k_value)


def build_g_tower(g_0: LaurentSeries, depth: int, alpha: Scalar = ALPHA, beta: Scalar = BETA,
                  seed: str = "") -> RecursionTower:
    alpha, beta = rf(alpha), rf(beta)
    terms = [g_0]
    for n in range(depth):
        terms.append(g_step(terms[-1], n, alpha, beta))
    logger.debug(f"Built g-tower '{seed}' to depth {depth}")
    return RecursionTower(POSITIVE_DEFINITE, alpha, beta, tuple(terms), seed)


def build_h_tower(h_1: LaurentSeries, depth: int, alpha: Scalar = ALPHA, beta: Scalar = BETA,
                  seed: str = "") -> RecursionTower:
    """h_0 from the companion relation, then h_2, h_3, ... from the two-step recursion."""
    alpha, beta = rf(alpha), rf(beta)
    terms = [h0_from_h1(h_1, alpha, beta), h_1]
    for n in range(depth - 1):
        terms.append(h_step(terms[n], n, alpha, beta))
    logger.debug(f"Built h-tower '{seed}' to depth {depth}")
    return RecursionTower(INDEFINITE, alpha, beta, tuple(terms), seed)


def tower_residuals(tower) -> List:
    return tower.residuals()


def partial_sum(tower, x: float, second: float, N: Optional[int] = None, k_value=None):
    """sum_{n <= N} t_n(x) second^n, on |v| < u^2 (g-towers) or u^2 < v (h-towers).

    For a g-tower x = u and second = v; for an h-tower x = v and second = u.
    """
    if tower.case == POSITIVE_DEFINITE:
        if not abs(second) < x ** 2:
            raise DomainError(f"g-expansion needs |v| < u^2, got u = {x}, v = {second}")
    elif not second ** 2 < x:
        raise DomainError(f"h-expansion needs u^2 < v, got v = {x}, u = {second}")
    top = len(tower) - 1 if N is None else min(N, len(tower) - 1)
    total = mpmath.mpf(0)
    power = mpmath.mpf(1)
    for n in range(top + 1):
        total += tower.rung_value(n, x, k_value) * power
        power *= second
    return total


# growth-lemma hypotheses --------------------------------------------------

@dataclass
class GrowthHypotheses:
    """deg p_{n,0} = 0 and deg p_{n,d} < d for g_{n+1} = sum_d p_{n,d} g_n^{(d)}."""
    holds: bool
    valuation_bound: int
    failures: List[str] = field(default_factory=list)


def recursion_coefficients(n: int, alpha: Scalar = ALPHA, beta: Scalar = BETA) -> Dict[int, LaurentSeries]:
    alpha, beta = rf(alpha), rf(beta)
    factor = rf(-1) / (4 * (n + 1) ** 2)
    return {
        0: LaurentSeries.from_terms("u", {-1: 2 * (alpha - beta) * factor, 0: -factor}),
        1: LaurentSeries.from_terms("u", {-1: 2 * (2 * n + alpha + beta) * factor}),
        2: LaurentSeries.from_terms("u", {0: factor}),
    }


def growth_hypotheses(depth: int, alpha: Scalar = ALPHA, beta: Scalar = BETA) -> GrowthHypotheses:
    failures = []
    bound = 0
    for n in range(depth):
        for d, p in recursion_coefficients(n, alpha, beta).items():
            if p.is_zero():
                continue
            if d == 0 and p.degree != 0:
                failures.append(f"deg p_{n},0 = {p.degree}")
            if d > 0 and p.degree >= d:
                failures.append(f"deg p_{n},{d} = {p.degree} >= {d}")
            bound = min(bound, p.valuation - d)
    return GrowthHypotheses(not failures, bound, failures)


def check_degree_bounds(tower: RecursionTower, valuation_bound: int) -> List[str]:
    """deg g_n <= deg g_0 and val g_n >= val g_0 + n V on a Laurent-polynomial tower."""
    g_0 = tower.terms[0]
    problems = []
    for n, g_n in enumerate(tower.terms):
        if g_n.is_zero():
            continue
        if g_n.degree > g_0.degree:
            problems.append(f"deg g_{n} = {g_n.degree} exceeds deg g_0 = {g_0.degree}")
        if g_n.valuation < g_0.valuation + n * valuation_bound:
            problems.append(f"val g_{n} = {g_n.valuation} below {g_0.valuation + n * valuation_bound}")
    return problems


# towers over {psi, phi, phi'} ---------------------------------------------

def _whittaker_ratio(alpha, beta) -> LaurentSeries:
    """R with phi'' = R phi."""
    total = alpha + beta
    return LaurentSeries.from_terms("u", {0: 1, -1: 2 * (beta - alpha), -2: (total - 1) * (total - 2)})


@dataclass(frozen=True)
class FunctionalRung:
    """A psi + B phi + C phi' with psi' = phi / u and phi'' = R phi."""
    alpha: RationalFunctionK
    beta: RationalFunctionK
    psi: LaurentSeries
    phi: LaurentSeries
    dphi: LaurentSeries

    def _map(self, fn) -> "FunctionalRung":
        return FunctionalRung(self.alpha, self.beta, fn(self.psi), fn(self.phi), fn(self.dphi))

    def __add__(self, other: "FunctionalRung") -> "FunctionalRung":
        return FunctionalRung(self.alpha, self.beta, self.psi + other.psi,
                              self.phi + other.phi, self.dphi + other.dphi)

    def __neg__(self) -> "FunctionalRung":
        return self.scale(-1)

    def __sub__(self, other: "FunctionalRung") -> "FunctionalRung":
        return self + (-other)

    def scale(self, factor: Scalar) -> "FunctionalRung":
        return self._map(lambda c: c.scale(factor))

    def shift(self, n: int) -> "FunctionalRung":
        return self._map(lambda c: c.shift(n))

    def derivative(self) -> "FunctionalRung":
        ratio = _whittaker_ratio(self.alpha, self.beta)
        return FunctionalRung(
            self.alpha, self.beta,
            self.psi.derivative(),
            self.psi.shift(-1) + self.phi.derivative() + self.dphi * ratio,
            self.phi + self.dphi.derivative(),
        )

    def nth_derivative(self, d: int) -> "FunctionalRung":
        result = self
        for _ in range(d):
            result = result.derivative()
        return result

    def is_zero(self) -> bool:
        return self.psi.is_zero() and self.phi.is_zero() and self.dphi.is_zero()

    def value(self, u, k_value, basis) -> mpmath.mpf:
        psi, phi, dphi = basis
        return (self.psi.evaluate(u, k_value) * psi + self.phi.evaluate(u, k_value) * phi
                + self.dphi.evaluate(u, k_value) * dphi)


class WhittakerBasis:
    """Numeric psi, phi, phi' for the M- or W-integral seed at an integer k."""

    def __init__(self, kind: str, k: int, dps: int = 50):
        if kind not in ("M", "W"):
            raise ValueError(f"unknown Whittaker seed '{kind}', expected M or W")
        self.kind = kind
        self.k = k
        self.dps = dps
        self.nu = mpmath.mpf(1 - k)
        sign = 1 if k > 0 else -1
        self.mu = sign * (mpmath.mpf(k) - mpmath.mpf(3) / 2)
        self._cache: Dict[float, Tuple] = {}

    def phi(self, u):
        if self.kind == "M":
            return mpmath.whitm(self.nu, self.mu, 2 * u)
        return -mpmath.whitw(self.nu, self.mu, 2 * u)

    def psi(self, u):
        if self.kind == "M":
            return mpmath.quad(lambda t: mpmath.whitm(self.nu, self.mu, 2 * t) / t, [1, u])
        return mpmath.quad(lambda t: mpmath.whitw(self.nu, self.mu, 2 * t) / t, [u, mpmath.inf])

    def __call__(self, u: float) -> Tuple:
        if u not in self._cache:
            with mpmath.workdps(self.dps):
                point = mpmath.mpf(u)
                self._cache[u] = (self.psi(point), self.phi(point), mpmath.diff(self.phi, point))
        return self._cache[u]


@dataclass(frozen=True)
class FunctionalTower:
    """g-tower for g_0 = u^{1-k} psi with psi built from a Whittaker function."""
    case: str
    alpha: RationalFunctionK
    beta: RationalFunctionK
    terms: Tuple[FunctionalRung, ...]
    seed: str
    basis: WhittakerBasis

    def __len__(self) -> int:
        return len(self.terms)

    def residuals(self) -> List[FunctionalRung]:
        return [g_residual(self.terms[n], self.terms[n + 1], n, self.alpha, self.beta)
                for n in range(len(self.terms) - 1)]

    def is_exact_solution(self) -> bool:
        return all(residual.is_zero() for residual in self.residuals())

    def rung_value(self, n: int, x, k_value=None):
        with mpmath.workdps(self.basis.dps):
            return self.terms[n].value(mpmath.mpf(x), self.basis.k, self.basis(x))


def build_functional_tower(kind: str, k: int, depth: int, dps: int = 50) -> FunctionalTower:
    """Tower seeded by u^{1-k} int psi at the scale-free normalization for an integer k."""
    alpha, beta = rf(Fraction(1, 2)), rf(Fraction(2 * k - 1, 2))
    prefactor = LaurentSeries.monomial("u", SymbolicExponent(1 - k))
    zero = LaurentSeries.zero("u", None, prefactor.prefactor)
    terms = [FunctionalRung(alpha, beta, prefactor, zero, zero)]
    for n in range(depth):
        terms.append(g_step(terms[-1], n, alpha, beta))
    logger.debug(f"Built {kind}-integral tower at k = {k} to depth {depth}")
    return FunctionalTower(POSITIVE_DEFINITE, alpha, beta, tuple(terms), f"{kind}-integral",
                           WhittakerBasis(kind, k, dps))
