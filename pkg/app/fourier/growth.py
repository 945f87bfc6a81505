"""Empirical growth of the positive-definite expansion sum_n g_n(u) v^n."""

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import mpmath
import numpy as np

from ..algebra.field import SymbolicExponent, rf, rf_constant
from ..algebra.series import LaurentSeries
from .towers import RecursionTower, build_functional_tower, build_g_tower, partial_sum

logger = logging.getLogger(__name__)

SEEDS = ("laurent", "M-integral", "W-integral", "zero")
DEFAULT_GRID = tuple(float(u) for u in np.linspace(4.0, 40.0, 13))


@dataclass
class GrowthReport:
    """Partial sums along a u-grid and the moderate/rapid verdict drawn from them."""
    seed: str
    k: int
    kappa: float
    depth: int
    grid: List[float]
    log_values: List[float]
    slopes: List[float]
    threshold: float
    verdict: str
    coefficient_bound: Optional[float] = None
    parameters: Dict = field(default_factory=dict)

    @property
    def rapid(self) -> bool:
        return self.verdict == "rapid"

    def to_dict(self) -> Dict:
        return asdict(self)


def _log_abs(value) -> float:
    value = abs(value)
    return float(mpmath.log(value)) if value > 0 else float("-inf")


def _largest_coefficient(series: LaurentSeries) -> float:
    return max((abs(float(rf_constant(c) or 0)) for _, c in series.terms()), default=0.0)


def coefficient_bound(tower: RecursionTower) -> Optional[float]:
    """Observed b >= 1 with max|coeff g_n| <= B b^n over the second half of a specialized Laurent tower.

    B is fixed by the rung at the midpoint, so early transients only move B.
    """
    tops = [_largest_coefficient(g_n) for g_n in tower.terms]
    middle = len(tops) // 2
    if len(tops) < 3 or tops[middle] == 0:
        return None
    bound = 1.0
    for n in range(middle + 1, len(tops)):
        if tops[n] > 0:
            bound = max(bound, (tops[n] / tops[middle]) ** (1.0 / (n - middle)))
    return bound


def growth_diagnostic(seed: str, k: int, N: int = 64, grid: Sequence[float] = DEFAULT_GRID,
                      kappa: Optional[float] = None, dps: int = 50) -> GrowthReport:
    """Classify sum_{n <= N} g_n(u) (u^2/kappa)^n along the grid.

    Without an explicit kappa, kappa = 2b for the observed coefficient bound b
    of a Laurent tower, and kappa = 2 for the functional seeds. The verdict is
    rapid when the mean log-log slope over the top half of the grid exceeds
    |1-k| + 4.
    """
    if seed not in SEEDS:
        raise ValueError(f"unknown seed '{seed}', expected one of {SEEDS}")
    alpha, beta = rf(Fraction(1, 2)), rf(Fraction(2 * k - 1, 2))
    bound = None
    if seed == "laurent":
        tower = build_g_tower(LaurentSeries.monomial("u", SymbolicExponent(1 - k)), N, alpha, beta, seed)
        bound = coefficient_bound(tower)
    elif seed == "zero":
        tower = build_g_tower(LaurentSeries.zero("u"), N, alpha, beta, seed)
    else:
        tower = build_functional_tower(seed[0], k, N, dps)
    if kappa is None:
        kappa = 2.0 * bound if bound is not None else 2.0
    logger.debug(f"Growth of '{seed}' seed at k = {k}: coefficient bound {bound}, kappa {kappa}")

    grid = [float(u) for u in grid]
    with mpmath.workdps(dps):
        logs = [_log_abs(partial_sum(tower, u, u * u / kappa, N, k)) for u in grid]
    slopes = []
    for i in range(len(grid) - 1):
        if np.isfinite(logs[i]) and np.isfinite(logs[i + 1]):
            slopes.append(float((logs[i + 1] - logs[i]) / (np.log(grid[i + 1]) - np.log(grid[i]))))
        else:
            slopes.append(0.0)
    threshold = float(abs(1 - k) + 4)
    top_half = slopes[len(slopes) // 2:]
    mean_slope = float(np.mean(top_half)) if top_half else 0.0
    verdict = "rapid" if mean_slope > threshold else "moderate"
    logger.info(f"Growth of '{seed}' seed at k = {k}: mean slope {mean_slope:.2f} "
                f"against threshold {threshold}, verdict {verdict}")
    return GrowthReport(
        seed=seed, k=k, kappa=kappa, depth=N, grid=grid, log_values=logs,
        slopes=slopes, threshold=threshold, verdict=verdict, coefficient_bound=bound,
        parameters={"mean_top_slope": mean_slope, "v": "u^2/kappa", "dps": dps},
    )
