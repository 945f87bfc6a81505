"""Exact decay of the coefficient ratio between two indefinite-case solutions."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ..odes.solutions import indefinite_h1_specs

logger = logging.getLogger(__name__)

OFFSET_CONVENTION = "position"


@dataclass
class RatioDecayResult:
    """a_n / b_n for n = 0..N, coefficients compared by position in each series' own lattice."""
    k: int
    ratios: List[Fraction]
    monotone_from: Optional[int]
    positive_from: Optional[int]
    offset_convention: str = OFFSET_CONVENTION

    @property
    def final_ratio(self) -> Fraction:
        return self.ratios[-1]

    def below(self, threshold: float) -> bool:
        return abs(self.final_ratio) < threshold


def _coefficients(spec, k: int, N: int) -> List[Fraction]:
    upper, lower = spec.numeric_parameters(k)
    scale = spec.scale.rational
    coeff = Fraction(1)
    result = []
    for n in range(N + 1):
        result.append(coeff)
        numerator = Fraction(1)
        for a in upper:
            numerator *= a + n
        denominator = Fraction(n + 1)
        for b in lower:
            denominator *= b + n
        coeff = coeff * numerator * scale / denominator
    return result


def _tail_start(flags: List[bool]) -> Optional[int]:
    """First index from which every flag holds."""
    if not flags or not flags[-1]:
        return None
    start = len(flags) - 1
    while start > 0 and flags[start - 1]:
        start -= 1
    return start


def coeff_ratio_decay(k: int, N: int = 400) -> RatioDecayResult:
    """Ratio of the v^n coefficients of the 2F3 solution to those of the 1F2 solution."""
    if k >= 0:
        raise ValueError(f"coefficient ratio decay is stated for k < 0, got k = {k}")
    specs = indefinite_h1_specs()
    top = _coefficients(specs["2F3-three-halves-minus-k"], k, N)
    bottom = _coefficients(specs["1F2-minus-k-half"], k, N)
    ratios = []
    for n, (a, b) in enumerate(zip(top, bottom)):
        if b == 0:
            raise ZeroDivisionError(f"coefficient {n} of the 1F2 solution vanishes at k = {k}")
        ratios.append(a / b)
    decreasing = [abs(ratios[n + 1]) < abs(ratios[n]) for n in range(N)]
    positive = [a > 0 and b > 0 for a, b in zip(top, bottom)]
    result = RatioDecayResult(k, ratios, _tail_start(decreasing), _tail_start(positive))
    logger.info(f"Ratio decay at k = {k}: final ratio {float(result.final_ratio):.3e}, "
                f"monotone from n = {result.monotone_from}")
    return result
