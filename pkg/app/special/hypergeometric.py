"""Generalized hypergeometric series pFq, formal over Q(k) and numeric."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath

from ..algebra.field import (
    ONE,
    RationalFunctionK,
    Scalar,
    SymbolicExponent,
    canonical_text,
    rf,
    rf_constant,
    rf_evaluate,
)
from ..algebra.series import LaurentSeries
from ..errors import HypothesisError, NonconvergentSeriesError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArgumentScale:
    """A rational multiple of a power of pi, kept symbolic until evaluation."""
    rational: Fraction = Fraction(1)
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational))

    def __mul__(self, other: "ArgumentScale") -> "ArgumentScale":
        return ArgumentScale(self.rational * other.rational, self.pi_power + other.pi_power)

    @property
    def is_rational(self) -> bool:
        return self.pi_power == 0

    def numeric(self):
        return mpmath.mpf(self.rational.numerator) / self.rational.denominator * mpmath.pi ** self.pi_power


@dataclass(frozen=True)
class NumericPrecision:
    """Working precision for numeric special-function evaluations."""
    relative_tolerance: float = 1e-9
    series_cutoff: int = 200
    asymptotic_threshold: float = 40.0
    dps: int = 30
    declared_truncation: bool = False

    def __post_init__(self):
        if self.relative_tolerance <= 0:
            raise ValueError("relative_tolerance must be positive")
        if self.series_cutoff < 1:
            raise ValueError("series_cutoff must be at least 1")


@dataclass(frozen=True)
class HypergeometricSpec:
    """x^prefactor * pFq(upper; lower; scale * x)."""
    upper: Tuple[RationalFunctionK, ...]
    lower: Tuple[RationalFunctionK, ...]
    scale: ArgumentScale = field(default_factory=ArgumentScale)
    prefactor: SymbolicExponent = field(default_factory=SymbolicExponent)
    variable: str = "v"

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(rf(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(rf(b) for b in self.lower))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def lower_parameter_violations(self) -> List[str]:
        """Lower parameters that are constant nonpositive integers."""
        bad = []
        for b in self.lower:
            value = rf_constant(b)
            if value is not None and value.denominator == 1 and value <= 0:
                bad.append(canonical_text(b))
        return bad

    def check_formal(self):
        bad = self.lower_parameter_violations()
        if bad:
            raise HypothesisError(
                f"lower parameters {bad} are nonpositive integers; "
                "every lower parameter must be positive or nonintegral")

    def numeric_parameters(self, k_value=None):
        """Upper and lower parameters as Fractions at k = k_value."""
        def value(a):
            constant = rf_constant(a)
            if constant is not None:
                return constant
            if k_value is None:
                raise HypothesisError(f"parameter {canonical_text(a)} depends on k; supply a value")
            return rf_evaluate(a, k_value)

        upper = [value(a) for a in self.upper]
        lower = [value(b) for b in self.lower]
        for b in lower:
            if b.denominator == 1 and b <= 0:
                raise HypothesisError(f"lower parameter {b} is a nonpositive integer at k = {k_value}")
        return upper, lower

    def contiguous(self) -> "HypergeometricSpec":
        """Parameters shifted to (a + 1; b + 1)."""
        return HypergeometricSpec(tuple(a + 1 for a in self.upper), tuple(b + 1 for b in self.lower),
                                  self.scale, self.prefactor, self.variable)


def pochhammer(a: Scalar, n: int):
    """Rising factorial (a)_n = a(a+1)...(a+n-1); (a)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer index must be nonnegative")
    result = ONE if isinstance(a, RationalFunctionK) else 1
    for i in range(n):
        result = result * (a + i)
    return result


def pfq_coefficient_ratio(spec: HypergeometricSpec, n: int) -> RationalFunctionK:
    """c_{n+1} / c_n."""
    numerator = ONE
    for a in spec.upper:
        numerator = numerator * (a + n)
    denominator = rf(n + 1)
    for b in spec.lower:
        denominator = denominator * (b + n)
    return numerator * rf(spec.scale.rational) / denominator


def pfq_formal(spec: HypergeometricSpec, order: int) -> LaurentSeries:
    """Coefficients c_0..c_order of x^prefactor pFq, exact in k."""
    spec.check_formal()
    if not spec.scale.is_rational:
        raise HypothesisError("formal series need a rational argument scale; "
                              f"got pi^{spec.scale.pi_power}")
    coefficients = []
    coeff = ONE
    for n in range(order + 1):
        coefficients.append(coeff)
        coeff = coeff * pfq_coefficient_ratio(spec, n)
    return LaurentSeries(spec.variable, 0, tuple(coefficients), order + 1, spec.prefactor)


def pfq_partial_sum(upper: Sequence, lower: Sequence, z, terms: int):
    """Direct summation of the first `terms` terms (brute-force oracle)."""
    upper = [mpmath.mpmathify(a) for a in upper]
    lower = [mpmath.mpmathify(b) for b in lower]
    z = mpmath.mpmathify(z)
    total = mpmath.mpf(0)
    term = mpmath.mpf(1)
    for n in range(terms):
        total += term
        ratio = z / (n + 1)
        for a in upper:
            ratio *= a + n
        for b in lower:
            ratio /= b + n
        term *= ratio
    return total


def pfq_numeric(spec: HypergeometricSpec, z: float, k_value=None,
                precision: Optional[NumericPrecision] = None) -> float:
    """x^prefactor pFq(a; b; scale*x) at x = z for a numeric k."""
    precision = precision or NumericPrecision()
    upper, lower = spec.numeric_parameters(k_value)
    with mpmath.workdps(precision.dps):
        argument = spec.scale.numeric() * mpmath.mpf(z)
        if spec.p > spec.q + 1 or (spec.p == spec.q + 1 and abs(argument) >= 1):
            if not precision.declared_truncation:
                raise NonconvergentSeriesError(
                    f"{spec.p}F{spec.q} diverges at argument {mpmath.nstr(argument, 8)}")
            logger.debug(f"Using declared truncation of {precision.series_cutoff} terms")
            value = pfq_partial_sum(upper, lower, argument, precision.series_cutoff)
        else:
            value = mpmath.hyper([mpmath.mpf(a.numerator) / a.denominator for a in upper],
                                 [mpmath.mpf(b.numerator) / b.denominator for b in lower],
                                 argument)
        if spec.prefactor != SymbolicExponent():
            if spec.prefactor.k_linear and k_value is None:
                raise HypothesisError(f"prefactor x^({spec.prefactor}) depends on k; supply a value")
            exponent = spec.prefactor.at(k_value if k_value is not None else 0)
            value *= mpmath.mpf(z) ** (mpmath.mpf(exponent.numerator) / exponent.denominator)
        return float(mpmath.re(value))
