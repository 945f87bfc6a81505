"""Linear differential operators with Laurent-polynomial coefficients."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from ..algebra.field import ONE, Scalar, SymbolicExponent, rf
from ..algebra.series import LaurentSeries
from ..errors import ExactArithmeticError


@dataclass(frozen=True)
class LinearDiffOp:
    """sum_d c_d(x, k) d^d/dx^d, coefficients stored as exact Laurent polynomials."""
    variable: str
    terms: Tuple[Tuple[int, LaurentSeries], ...]
    name: str = ""

    def __post_init__(self):
        merged: Dict[int, LaurentSeries] = {}
        for order, coefficient in self.terms:
            if order < 0:
                raise ValueError(f"derivative order must be nonnegative, got {order}")
            if coefficient.variable != self.variable:
                raise ExactArithmeticError(
                    f"coefficient in {coefficient.variable} for an operator in {self.variable}")
            if not coefficient.is_exact or coefficient.prefactor != SymbolicExponent():
                raise ExactArithmeticError("operator coefficients must be exact Laurent polynomials")
            merged[order] = merged[order] + coefficient if order in merged else coefficient
        cleaned = tuple(sorted((d, c) for d, c in merged.items() if not c.is_zero()))
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def from_terms(cls, variable: str, spec: Dict[int, Dict[int, Scalar]], name: str = "") -> "LinearDiffOp":
        """Build from {derivative order: {power of x: coefficient}}."""
        terms = tuple((d, LaurentSeries.from_terms(variable, powers)) for d, powers in spec.items())
        return cls(variable, terms, name)

    @property
    def order(self) -> int:
        """D, the largest derivative order with a nonzero coefficient."""
        return max((d for d, _ in self.terms), default=0)

    @property
    def m_v(self) -> int:
        """Largest power of the variable among the coefficients."""
        return max((c.degree for _, c in self.terms), default=0)

    @property
    def is_polynomial(self) -> bool:
        return all(c.valuation >= 0 for _, c in self.terms)

    def coefficient(self, d: int) -> LaurentSeries:
        for order, coefficient in self.terms:
            if order == d:
                return coefficient
        return LaurentSeries.zero(self.variable)

    def apply(self, f: LaurentSeries) -> LaurentSeries:
        if f.variable != self.variable:
            raise ExactArithmeticError(f"operator in {self.variable} applied to a series in {f.variable}")
        result = LaurentSeries.zero(self.variable, None, f.prefactor)
        derivative, current = f, 0
        for d, coefficient in self.terms:
            derivative = derivative.nth_derivative(d - current)
            current = d
            result = result + coefficient * derivative
        return result

    def __add__(self, other: "LinearDiffOp") -> "LinearDiffOp":
        return LinearDiffOp(self.variable, self.terms + other.terms, self.name or other.name)

    def scale(self, factor: Scalar) -> "LinearDiffOp":
        return LinearDiffOp(self.variable, tuple((d, c.scale(factor)) for d, c in self.terms), self.name)

    def conjugated(self, exponent: SymbolicExponent) -> "LinearDiffOp":
        """The operator g -> x^{-e} op(x^{e} g)."""
        base = exponent.value()
        terms = []
        for d, coefficient in self.terms:
            falling, binomial = ONE, Fraction(1)
            for j in range(d + 1):
                factor = LaurentSeries.monomial(self.variable, SymbolicExponent(-j), rf(binomial) * falling)
                terms.append((d - j, coefficient * factor))
                falling = falling * (base - j)
                binomial = binomial * (d - j) / (j + 1)
        return LinearDiffOp(self.variable, tuple(terms), self.name)

    def specialize(self, k_value) -> "LinearDiffOp":
        return LinearDiffOp(self.variable, tuple((d, c.specialize(k_value)) for d, c in self.terms), self.name)

    def __str__(self) -> str:
        parts = [f"[{c}] D^{d}" for d, c in self.terms]
        return " + ".join(parts) or "0"


def apply_op(op: LinearDiffOp, f: LaurentSeries) -> LaurentSeries:
    return op.apply(f)


def compose(outer: LinearDiffOp, inner: LinearDiffOp) -> LinearDiffOp:
    """outer o inner via the Leibniz rule."""
    if outer.variable != inner.variable:
        raise ExactArithmeticError("cannot compose operators in different variables")
    terms = []
    for d_outer, c_outer in outer.terms:
        for d_inner, c_inner in inner.terms:
            # d^a (c g^{(b)}) = sum_j C(a, j) c^{(j)} g^{(a - j + b)}
            binomial = Fraction(1)
            derivative = c_inner
            for j in range(d_outer + 1):
                terms.append((d_outer - j + d_inner, c_outer * derivative.scale(rf(binomial))))
                derivative = derivative.derivative()
                binomial = binomial * (d_outer - j) / (j + 1)
    return LinearDiffOp(outer.variable, tuple(terms), outer.name)
