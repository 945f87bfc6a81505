"""Truncated Laurent series over Q(k) with a global k-linear prefactor.

A series represents

    x^prefactor * sum_{n >= valuation} c_n x^n  +  O(x^(prefactor + order))

where ``order`` is None for an exact (finite) Laurent polynomial. Arithmetic
follows the min rule: a coefficient is kept only when every contribution to it
is known.
"""

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

import mpmath

from ..errors import ExactArithmeticError
from .field import (
    ONE,
    ZERO,
    RationalFunctionK,
    Scalar,
    SymbolicExponent,
    rf,
    rf_numeric,
    rf_specialize,
)


def _min_order(*orders: Optional[int]) -> Optional[int]:
    known = [o for o in orders if o is not None]
    return min(known) if known else None


@dataclass(frozen=True)
class LaurentSeries:
    """Immutable truncated Laurent series in one formal variable."""
    variable: str
    valuation: int
    coefficients: Tuple[RationalFunctionK, ...]
    order: Optional[int] = None
    prefactor: SymbolicExponent = dataclass_field(default_factory=SymbolicExponent)

    def __post_init__(self):
        whole, canonical = self.prefactor.split()
        valuation = self.valuation + whole
        order = None if self.order is None else self.order + whole
        coefficients = [rf(c) for c in self.coefficients]
        if order is not None:
            coefficients = coefficients[:max(0, order - valuation)]
        while coefficients and not coefficients[-1]:
            coefficients.pop()
        lead = 0
        while lead < len(coefficients) and not coefficients[lead]:
            lead += 1
        coefficients = coefficients[lead:]
        valuation += lead
        if not coefficients:
            valuation = order if order is not None else 0
        object.__setattr__(self, "prefactor", canonical)
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coefficients", tuple(coefficients))

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, variable: str, order: Optional[int] = None,
             prefactor: Optional[SymbolicExponent] = None) -> "LaurentSeries":
        return cls(variable, 0 if order is None else order, (), order,
                   prefactor or SymbolicExponent())

    @classmethod
    def monomial(cls, variable: str, exponent: SymbolicExponent,
                 coefficient: Scalar = 1) -> "LaurentSeries":
        """Exact c * x^exponent."""
        return cls(variable, 0, (rf(coefficient),), None, exponent)

    @classmethod
    def constant(cls, variable: str, value: Scalar) -> "LaurentSeries":
        return cls.monomial(variable, SymbolicExponent(), value)

    @classmethod
    def from_terms(cls, variable: str, terms: Dict[int, Scalar],
                   order: Optional[int] = None,
                   prefactor: Optional[SymbolicExponent] = None) -> "LaurentSeries":
        """Build from {integer exponent: coefficient}."""
        prefactor = prefactor or SymbolicExponent()
        if not terms:
            return cls.zero(variable, order, prefactor)
        low, high = min(terms), max(terms)
        coefficients = [rf(terms.get(n, 0)) for n in range(low, high + 1)]
        return cls(variable, low, tuple(coefficients), order, prefactor)

    # inspection -----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def degree(self) -> Optional[int]:
        """Largest stored exponent (relative to the prefactor)."""
        if not self.coefficients:
            return None
        return self.valuation + len(self.coefficients) - 1

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coefficients

    def coefficient(self, exponent: int) -> RationalFunctionK:
        """Coefficient of x^(prefactor + exponent)."""
        if self.order is not None and exponent >= self.order:
            raise ExactArithmeticError(
                f"coefficient {exponent} is beyond the truncation order {self.order}")
        index = exponent - self.valuation
        if 0 <= index < len(self.coefficients):
            return self.coefficients[index]
        return ZERO

    def terms(self) -> Iterable[Tuple[int, RationalFunctionK]]:
        for index, coeff in enumerate(self.coefficients):
            if coeff:
                yield self.valuation + index, coeff

    def _check_variable(self, other: "LaurentSeries"):
        if other.variable != self.variable:
            raise ExactArithmeticError(
                f"variable mismatch: {self.variable} vs {other.variable}")

    # arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(self.variable, other)
        self._check_variable(other)
        if other.prefactor != self.prefactor:
            if other.is_zero() and other.is_exact:
                return self
            if self.is_zero() and self.is_exact:
                return other
            raise ExactArithmeticError(
                f"prefactors {self.variable}^({self.prefactor}) and "
                f"{other.variable}^({other.prefactor}) do not differ by an integer")
        prefactor = self.prefactor
        order = _min_order(self.order, other.order)
        terms: Dict[int, RationalFunctionK] = {}
        for series in (self, other):
            for exponent, coeff in series.terms():
                if order is None or exponent < order:
                    terms[exponent] = terms.get(exponent, ZERO) + coeff
        return LaurentSeries.from_terms(self.variable, terms, order, prefactor)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return self.scale(-1)

    def __sub__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(self.variable, other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentSeries":
        return (-self) + other

    def scale(self, factor: Scalar) -> "LaurentSeries":
        factor = rf(factor)
        return LaurentSeries(self.variable, self.valuation,
                             tuple(c * factor for c in self.coefficients),
                             self.order, self.prefactor)

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        self._check_variable(other)
        prefactor = self.prefactor + other.prefactor
        if (self.is_zero() and self.is_exact) or (other.is_zero() and other.is_exact):
            return LaurentSeries.zero(self.variable, None, prefactor)
        # a truncated zero series stores valuation == order
        order = _min_order(
            None if self.order is None else self.order + other.valuation,
            None if other.order is None else other.order + self.valuation,
        )
        terms: Dict[int, RationalFunctionK] = {}
        for e1, c1 in self.terms():
            for e2, c2 in other.terms():
                exponent = e1 + e2
                if order is None or exponent < order:
                    terms[exponent] = terms.get(exponent, ZERO) + c1 * c2
        return LaurentSeries.from_terms(self.variable, terms, order, prefactor)

    def __rmul__(self, other) -> "LaurentSeries":
        return self.scale(other)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by x^n."""
        return LaurentSeries(self.variable, self.valuation + n, self.coefficients,
                             None if self.order is None else self.order + n,
                             self.prefactor)

    def with_prefactor(self, exponent: SymbolicExponent) -> "LaurentSeries":
        """Multiply by x^exponent."""
        return LaurentSeries(self.variable, self.valuation, self.coefficients,
                             self.order, self.prefactor + exponent)

    def derivative(self) -> "LaurentSeries":
        """Termwise d/dx, including the symbolic prefactor."""
        base = self.prefactor.value()
        terms = {exponent - 1: coeff * (base + exponent) for exponent, coeff in self.terms()}
        order = None if self.order is None else self.order - 1
        return LaurentSeries.from_terms(self.variable, terms, order, self.prefactor)

    def nth_derivative(self, d: int) -> "LaurentSeries":
        result = self
        for _ in range(d):
            result = result.derivative()
        return result

    def truncate(self, order: int) -> "LaurentSeries":
        return LaurentSeries(self.variable, self.valuation, self.coefficients,
                             _min_order(self.order, order), self.prefactor)

    def with_coefficient(self, exponent: int, value: Scalar) -> "LaurentSeries":
        terms = dict(self.terms())
        terms[exponent] = rf(value)
        return LaurentSeries.from_terms(self.variable, terms, self.order, self.prefactor)

    def reflect(self) -> "LaurentSeries":
        """x -> -x, dropping the constant factor (-1)^prefactor."""
        terms = {e: c if e % 2 == 0 else -c for e, c in self.terms()}
        return LaurentSeries.from_terms(self.variable, terms, self.order, self.prefactor)

    def specialize(self, k_value) -> "LaurentSeries":
        """Substitute a rational k in coefficients and prefactor."""
        k_value = Fraction(k_value)
        return LaurentSeries(self.variable, self.valuation,
                             tuple(rf_specialize(c, k_value) for c in self.coefficients),
                             self.order, self.prefactor.specialize(k_value))

    def evaluate(self, x, k_value):
        """Numeric value of the stored terms at x (mpmath), the tail is ignored."""
        x = mpmath.mpmathify(x)
        total = mpmath.mpf(0)
        for exponent, coeff in self.terms():
            total += rf_numeric(coeff, k_value) * x ** exponent
        base = rf_numeric(self.prefactor.value(), k_value)
        return total * x ** base

    def __str__(self) -> str:
        parts = [f"({c.as_expr()})*{self.variable}^{e}" for e, c in self.terms()]
        body = " + ".join(parts) or "0"
        if self.order is not None:
            body += f" + O({self.variable}^{self.order})"
        if self.prefactor != SymbolicExponent():
            body = f"{self.variable}^({self.prefactor}) * ({body})"
        return body


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def series_diff(a: LaurentSeries) -> LaurentSeries:
    return a.derivative()


def exponential_series(variable: str, scale: Scalar, order: int) -> LaurentSeries:
    """exp(scale * x) to O(x^order)."""
    scale = rf(scale)
    terms = {}
    coeff = ONE
    for n in range(order):
        terms[n] = coeff
        coeff = coeff * scale / (n + 1)
    return LaurentSeries.from_terms(variable, terms, order)
