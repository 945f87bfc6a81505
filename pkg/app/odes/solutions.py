"""Catalog of closed-form solutions, encoded at the scale-free normalization.

Every entry is a prefactor times an integer-exponent series in u or v, with
alpha = 1/2 and beta = k - 1/2. Constant factors such as powers of 2 are
dropped since the equations are linear.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from ..algebra.field import K, SymbolicExponent, rf
from ..algebra.series import LaurentSeries, exponential_series
from ..special.hypergeometric import ArgumentScale, HypergeometricSpec, pfq_formal

HALF = rf(1) / 2
QUARTER = ArgumentScale(Fraction(1, 4))
DOUBLE = ArgumentScale(Fraction(2))


@dataclass(frozen=True)
class CatalogSolution:
    """A named solution together with the equation it solves."""
    name: str
    equation: str
    series: LaurentSeries


def indefinite_h1_specs() -> Dict[str, HypergeometricSpec]:
    """The four generalized hypergeometric solutions for h_1(v)."""
    return {
        "1F2-regular": HypergeometricSpec(
            (HALF,), ((1 + K) / 2, 1 + K / 2), QUARTER),
        "1F2-minus-k-half": HypergeometricSpec(
            ((1 - K) / 2,), (HALF, 1 - K / 2), QUARTER,
            SymbolicExponent(0, Fraction(-1, 2))),
        "1F2-one-minus-k-half": HypergeometricSpec(
            (1 - K / 2,), (rf(3) / 2, (3 - K) / 2), QUARTER,
            SymbolicExponent(Fraction(1, 2), Fraction(-1, 2))),
        "2F3-three-halves-minus-k": HypergeometricSpec(
            (rf(1), 2 - K), (rf(5) / 2 - K, 2 - K / 2, (5 - K) / 2), QUARTER,
            SymbolicExponent(Fraction(3, 2), -1)),
    }


def _kummer(upper, lower, order: int) -> LaurentSeries:
    return pfq_formal(HypergeometricSpec((upper,), (lower,), DOUBLE, variable="u"), order)


def confluent_solutions(order: int = 30) -> List[CatalogSolution]:
    """Exponential and Kummer-type solutions of the two confluent equations."""
    exp_plus = exponential_series("u", 1, order + 1)
    exp_minus = exponential_series("u", -1, order + 1)
    return [
        CatalogSolution("exponential", "confluent-phi",
                        exp_plus.with_prefactor(SymbolicExponent(-2, 1))),
        CatalogSolution("kummer-large-k", "confluent-psi",
                        exp_minus * _kummer(K - HALF, K, order)),
        CatalogSolution("kummer-negative-k", "confluent-psi",
                        (exp_minus * _kummer(HALF, 2 - K, order)).with_prefactor(SymbolicExponent(1, -1))),
    ]


def whittaker_m_solutions(order: int = 30) -> List[CatalogSolution]:
    """Formal M_{1-k, +-(k-3/2)}(2u) for both signs of mu."""
    exp_minus = exponential_series("u", -1, order + 1)
    plus = (exp_minus * _kummer(2 * K - 2, 2 * K - 2, order)).with_prefactor(SymbolicExponent(-1, 1))
    minus = (exp_minus * _kummer(rf(1), 4 - 2 * K, order)).with_prefactor(SymbolicExponent(2, -1))
    return [
        CatalogSolution("whittaker-m-sign-plus", "whittaker-phi", plus),
        CatalogSolution("whittaker-m-sign-minus", "whittaker-phi", minus),
    ]
