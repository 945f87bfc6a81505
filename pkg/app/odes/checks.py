"""Exact ODE checks: the finite-window lemma and the named operator catalog."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from ..algebra.field import K, Scalar, canonical_text, rf
from ..algebra.series import LaurentSeries
from ..errors import HypothesisError
from ..special.hypergeometric import HypergeometricSpec, pfq_formal
from .operators import LinearDiffOp

logger = logging.getLogger(__name__)

HALF = rf(1) / 2
ALPHA = HALF
BETA = K - HALF


@dataclass
class FiniteCheckResult:
    """Outcome of the finite-window check of op(x^l pFq) = 0."""
    operator: str
    verified: bool
    window: List[int]
    vacuous: List[int]
    series_order: int
    failed_index: Optional[int] = None
    residual: Optional[str] = None

    @property
    def success(self) -> bool:
        return self.verified


@dataclass
class OdeCheckResult:
    """Outcome of checking every known coefficient of op(f)."""
    operator: str
    verified: bool
    checked_through: Optional[int]
    failed_index: Optional[int] = None
    residual: Optional[str] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.verified


# named operators --------------------------------------------------------

def quartic_h1_operator() -> LinearDiffOp:
    """Fourth-order operator annihilating h_1 in the indefinite case."""
    return LinearDiffOp.from_terms("v", {
        4: {3: -16},
        3: {2: -32 * (K + 2)},
        2: {1: -4 * (5 * K ** 2 + 15 * K + 7), 2: 4},
        1: {0: -2 * (2 * K ** 3 + 5 * K ** 2 + K - 2), 1: 4 * K + 4},
        0: {0: 2 * K - 1},
    }, name="quartic-h1")


def confluent_operator(kind: str, alpha: Scalar = ALPHA, beta: Scalar = BETA) -> LinearDiffOp:
    """u f'' + c f' + (alpha - beta - u) f with c = 3-alpha-beta (phi) or alpha+beta (psi)."""
    alpha, beta = rf(alpha), rf(beta)
    if kind == "phi":
        c = 3 - alpha - beta
    elif kind == "psi":
        c = alpha + beta
    else:
        raise ValueError(f"unknown confluent kind '{kind}', expected phi or psi")
    return LinearDiffOp.from_terms("u", {2: {1: 1}, 1: {0: c}, 0: {0: alpha - beta, 1: -1}},
                                   name=f"confluent-{kind}")


def phi_whittaker_operator(alpha: Scalar = ALPHA, beta: Scalar = BETA) -> LinearDiffOp:
    """u^2 phi'' - (u^2 + 2(beta-alpha) u + (alpha+beta-1)(alpha+beta-2)) phi."""
    alpha, beta = rf(alpha), rf(beta)
    return LinearDiffOp.from_terms("u", {
        2: {2: 1},
        0: {2: -1, 1: -2 * (beta - alpha), 0: -(alpha + beta - 1) * (alpha + beta - 2)},
    }, name="whittaker-phi")


def companion_h0_operator(alpha: Scalar = ALPHA, beta: Scalar = BETA) -> LinearDiffOp:
    """Third-order operator T with T h_0 = (alpha - beta) h_1."""
    alpha, beta = rf(alpha), rf(beta)
    total = alpha + beta
    return LinearDiffOp.from_terms("v", {
        3: {2: 8},
        2: {1: 4 * (2 + 3 * total)},
        1: {0: 4 * total ** 2 + 2 * (total - 1), 1: -2},
        0: {0: -total},
    }, name="companion-h0")


OPERATOR_CATALOG: Dict[str, Callable[[], LinearDiffOp]] = {
    "quartic-h1": quartic_h1_operator,
    "confluent-phi": lambda: confluent_operator("phi"),
    "confluent-psi": lambda: confluent_operator("psi"),
    "whittaker-phi": phi_whittaker_operator,
    "companion-h0": companion_h0_operator,
}


def catalog_operator(identifier: str) -> LinearDiffOp:
    try:
        return OPERATOR_CATALOG[identifier]()
    except KeyError:
        raise KeyError(f"unknown operator '{identifier}', known: {sorted(OPERATOR_CATALOG)}") from None


# checks -----------------------------------------------------------------

def _vacuous_indices(op: LinearDiffOp, window: List[int], top: int) -> List[int]:
    """Window indices that no term of op can reach from seed indices 0..top."""
    vacuous = []
    for j in window:
        reachable = False
        for d, coefficient in op.terms:
            for power, _ in coefficient.terms():
                if 0 <= j + d - power <= top:
                    reachable = True
        if not reachable:
            vacuous.append(j)
    return vacuous


def finite_check(op: LinearDiffOp, spec: HypergeometricSpec) -> FiniteCheckResult:
    """Decide op(x^l pFq) = 0 from the coefficients l-D .. l+D+m_v."""
    spec.check_formal()
    if not op.is_polynomial:
        raise HypothesisError(f"operator {op.name or op} has non-polynomial coefficients")
    if op.variable != spec.variable:
        raise HypothesisError(f"operator in {op.variable} and series in {spec.variable}")
    D, m_v = op.order, op.m_v
    top = 2 * D + m_v
    seed = pfq_formal(spec, top)
    result = op.apply(seed)
    window = list(range(-D, D + m_v + 1))
    vacuous = _vacuous_indices(op, window, top)
    if vacuous:
        logger.debug(f"{op.name}: window indices {vacuous} receive no contribution")
    base = seed.valuation
    for j in window:
        coeff = result.coefficient(base + j)
        if coeff:
            return FiniteCheckResult(op.name, False, window, vacuous, top, j, canonical_text(coeff))
    return FiniteCheckResult(op.name, True, window, vacuous, top)


def series_check(op: LinearDiffOp, f: LaurentSeries) -> OdeCheckResult:
    """Every known coefficient of op(f) is the zero rational function."""
    result = op.apply(f)
    if result.is_zero():
        through = None if result.order is None else result.order - 1
        return OdeCheckResult(op.name, True, through)
    exponent, coeff = next(iter(result.terms()))
    return OdeCheckResult(op.name, False, None if result.order is None else result.order - 1,
                          exponent, canonical_text(coeff))


def confluent_ode_check(kind: str, alpha: Scalar, beta: Scalar, f: LaurentSeries) -> OdeCheckResult:
    return series_check(confluent_operator(kind, alpha, beta), f)


def phi_whittaker_ode_check(f: LaurentSeries, alpha: Scalar, beta: Scalar) -> OdeCheckResult:
    return series_check(phi_whittaker_operator(alpha, beta), f)


def symmetry_check(kind: str, alpha: Scalar, beta: Scalar, f: LaurentSeries) -> OdeCheckResult:
    """A solution for (alpha, beta), reflected u -> -u, solves the equation for (beta, alpha)."""
    return series_check(confluent_operator(kind, beta, alpha), f.reflect())


