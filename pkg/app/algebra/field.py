"""Exact rational functions in the formal weight k, and k-linear exponents."""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

import mpmath
from sympy.polys.domains import QQ
from sympy.polys.fields import field

from ..errors import ExactArithmeticError

K_FIELD, K = field("k", QQ)
RationalFunctionK = type(K)

Scalar = Union[int, Fraction, RationalFunctionK]


def rf(value: Scalar) -> RationalFunctionK:
    """Coerce an int, Fraction or field element into the field Q(k)."""
    if isinstance(value, RationalFunctionK):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, int):
        return K_FIELD(value)
    if isinstance(value, Rational):
        value = Fraction(value)
        return K_FIELD(QQ(value.numerator, value.denominator))
    raise TypeError(f"cannot coerce {type(value).__name__} into Q(k)")


ZERO = rf(0)
ONE = rf(1)

_OPERATIONS = ("add", "sub", "mul", "div")


def rf_arith(a: Scalar, b: Scalar, op: str) -> RationalFunctionK:
    """Exact field operation on two rational functions of k."""
    a, b = rf(a), rf(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ExactArithmeticError("division by the zero rational function")
        return a / b
    raise ValueError(f"unknown operation '{op}', expected one of {_OPERATIONS}")


def _poly_terms(poly):
    for monom, coeff in poly.terms():
        yield monom[0], Fraction(int(coeff.numerator), int(coeff.denominator))


def _horner(poly, value):
    total = 0
    for exponent, coeff in _poly_terms(poly):
        total += coeff * value ** exponent
    return total


def rf_evaluate(a: Scalar, k_value: Union[int, Fraction]) -> Fraction:
    """Exact value of a at a rational k."""
    a = rf(a)
    k_value = Fraction(k_value)
    denominator = _horner(a.denom, k_value)
    if denominator == 0:
        raise ExactArithmeticError(f"{canonical_text(a)} has a pole at k = {k_value}")
    return Fraction(_horner(a.numer, k_value)) / denominator


def rf_specialize(a: Scalar, k_value: Union[int, Fraction]) -> RationalFunctionK:
    """The constant field element obtained by substituting k = k_value."""
    return rf(rf_evaluate(a, k_value))


def rf_numeric(a: Scalar, k_value):
    """Evaluate at a real or mpmath k (numeric modules only)."""
    a = rf(a)
    if isinstance(k_value, Fraction):
        k_value = mpmath.mpf(k_value.numerator) / k_value.denominator
    k_value = mpmath.mpmathify(k_value)
    numerator = sum((mpmath.mpf(c.numerator) / c.denominator) * k_value ** e
                    for e, c in _poly_terms(a.numer))
    denominator = sum((mpmath.mpf(c.numerator) / c.denominator) * k_value ** e
                      for e, c in _poly_terms(a.denom))
    if denominator == 0:
        raise ExactArithmeticError(f"{canonical_text(a)} has a pole at k = {k_value}")
    return numerator / denominator


def rf_constant(a: Scalar):
    """The rational value of a if it does not depend on k, else None."""
    a = rf(a)
    if a.numer.degree() > 0 or a.denom.degree() > 0:
        return None
    if not a:
        return Fraction(0)
    return rf_evaluate(a, 0)


def canonical_text(a: Scalar) -> str:
    """Render a with a monic denominator, e.g. '(2*k - 1)/(k + 1/2)'."""
    a = rf(a)
    if not a:
        return "0"
    lead = a.denom.LC
    numer = a.numer.quo_ground(lead)
    denom = a.denom.quo_ground(lead)
    if denom == a.denom.ring.one:
        return str(numer.as_expr())
    return f"({numer.as_expr()})/({denom.as_expr()})"


@dataclass(frozen=True)
class SymbolicExponent:
    """An exponent a + b*k with rational a and b."""
    constant: Fraction = Fraction(0)
    k_linear: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "k_linear", Fraction(self.k_linear))

    def __add__(self, other: "SymbolicExponent") -> "SymbolicExponent":
        return SymbolicExponent(self.constant + other.constant, self.k_linear + other.k_linear)

    def __neg__(self) -> "SymbolicExponent":
        return SymbolicExponent(-self.constant, -self.k_linear)

    def __sub__(self, other: "SymbolicExponent") -> "SymbolicExponent":
        return self + (-other)

    def shifted(self, n: int) -> "SymbolicExponent":
        return SymbolicExponent(self.constant + n, self.k_linear)

    @property
    def is_integral(self) -> bool:
        return self.k_linear == 0 and self.constant.denominator == 1

    def split(self):
        """Return (integer part, canonical exponent with constant in [0, 1))."""
        whole = self.constant.numerator // self.constant.denominator
        return whole, SymbolicExponent(self.constant - whole, self.k_linear)

    def value(self) -> RationalFunctionK:
        return rf(self.constant) + rf(self.k_linear) * K

    def at(self, k_value) -> Fraction:
        return self.constant + self.k_linear * Fraction(k_value)

    def specialize(self, k_value) -> "SymbolicExponent":
        return SymbolicExponent(self.at(k_value), 0)

    def __str__(self) -> str:
        if self.k_linear == 0:
            return str(self.constant)
        k_part = "k" if self.k_linear == 1 else ("-k" if self.k_linear == -1 else f"{self.k_linear}*k")
        if self.constant == 0:
            return k_part
        sign = "+" if self.k_linear > 0 else ""
        return f"{self.constant}{sign}{k_part}"
