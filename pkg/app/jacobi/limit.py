"""Kohnen's limit process on Fourier-Jacobi slices, with an explicit convergence protocol."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import mpmath
import numpy as np

from ..config import settings
from ..errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_DELTA_MAX = 24.0
EXTENDED_DELTA_MAX = 6144.0


def delta_grid(delta_max: float = DEFAULT_DELTA_MAX) -> List[float]:
    """4, 6, ..., 24; a larger delta_max appends 48, 96, ... while <= delta_max."""
    grid = [float(d) for d in range(4, 25, 2)]
    delta = 48.0
    while delta <= delta_max:
        grid.append(delta)
        delta *= 2
    return grid


def neville_at_zero(h: Sequence[float], f: Sequence[complex]) -> complex:
    """Value at h = 0 of the interpolating polynomial through (h_i, f_i)."""
    total = 0j
    for i, (h_i, f_i) in enumerate(zip(h, f)):
        weight = 1.0
        for j, h_j in enumerate(h):
            if j != i:
                weight *= -h_j / (h_i - h_j)
        total += weight * f_i
    return total


def successive_spread(values: Sequence[complex]) -> float:
    """Largest |f_{i+1} - f_i| / |f_{i+1}| over the last three entries; 0 for an all-zero tail."""
    tail = list(values)[-3:]
    if len(tail) < 3:
        return float("inf")
    spread = 0.0
    for a, b in zip(tail, tail[1:]):
        difference = abs(b - a)
        if difference == 0:
            continue
        if b == 0:
            return float("inf")
        spread = max(spread, difference / abs(b))
    return spread


@dataclass
class LimitRecord:
    """Compensated values along the delta grid and their Richardson extrapolation.

    converged is the Cauchy test on the compensated values themselves;
    extrapolation_converged applies the same test to the extrapolated estimates.
    """
    deltas: List[float]
    values: List[complex]
    estimates: List[complex]
    converged: bool
    extrapolation_converged: bool
    limit: complex
    tolerance: float
    method: str
    parameters: Dict = field(default_factory=dict)

    @property
    def spread(self) -> float:
        return successive_spread(self.values)

    @property
    def extrapolation_spread(self) -> float:
        return successive_spread(self.estimates)

    def to_dict(self) -> Dict:
        return {
            "deltas": self.deltas,
            "values": [[v.real, v.imag] for v in self.values],
            "estimates": [[v.real, v.imag] for v in self.estimates],
            "converged": self.converged,
            "spread": self.spread,
            "extrapolation_converged": self.extrapolation_converged,
            "extrapolation_spread": self.extrapolation_spread,
            "limit": [self.limit.real, self.limit.imag],
            "tolerance": self.tolerance,
            "method": self.method,
            "parameters": self.parameters,
        }


def kohnen_limit(phi_m, m: int, tau: complex, z: complex, deltas: Optional[Sequence[float]] = None,
                 tolerance: float = 1e-3) -> LimitRecord:
    """lim e^{delta/2} e^{2 pi m v^2/y} phi_m(tau, z, delta/(4 pi m) + v^2/y).

    phi_m is a callable (tau, z, y') -> value. If it exposes
    compensated(tau, z, delta) the compensation is taken from there, otherwise
    the exponential factor is applied in mpmath to the returned value.
    The reported limit is the three-point Richardson estimate at the last node.
    """
    if m <= 0:
        raise DomainError(f"the limit process needs m > 0, got m = {m}")
    deltas = list(deltas) if deltas is not None else delta_grid()
    if any(b <= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("the delta grid must be increasing")
    y, v = tau.imag, z.imag
    direct = not hasattr(phi_m, "compensated")
    values = []
    with mpmath.workdps(settings.mp_dps):
        for delta in deltas:
            if direct:
                y_p = delta / (4 * np.pi * m) + v * v / y
                scale = mpmath.exp(mpmath.mpf(delta) / 2 + 2 * mpmath.pi * m * v * v / y)
                values.append(complex(scale * mpmath.mpmathify(phi_m(tau, z, y_p))))
            else:
                values.append(complex(phi_m.compensated(tau, z, delta)))
    h = [1.0 / d for d in deltas]
    estimates = list(values[:2])
    for i in range(2, len(values)):
        estimates.append(neville_at_zero(h[i - 2:i + 1], values[i - 2:i + 1]))
    converged = successive_spread(values) <= tolerance
    extrapolated = successive_spread(estimates) <= tolerance
    record = LimitRecord(deltas, values, estimates, converged, extrapolated, estimates[-1], tolerance,
                         "direct" if direct else "compensated",
                         {"m": m, "tau": [tau.real, tau.imag], "z": [z.real, z.imag]})
    if not converged:
        logger.warning(f"Compensated values at tau={tau}, z={z} are not Cauchy: spread {record.spread:.2e}, "
                       f"extrapolated spread {record.extrapolation_spread:.2e}")
    return record


@dataclass
class RankOneSlice:
    """m-th Fourier-Jacobi coefficient of det(Y)^{k-1/2} a(Y, T) e(tr TX) for singular T = (n r; r m).

    a(Y, T) = c1 U^{k-2} e^{2 pi U} Gamma(2-k, 4 pi U) + c2 U^{-k/2} W_{(1-k)/2,(k-1)/2}(4 pi U)
    with U = tr(TY). Values are mpmath numbers so large y' does not underflow.
    """
    k: int
    m: int
    n: int
    r: int
    c1: float = 0.0
    c2: float = 1.0

    def __post_init__(self):
        if self.n * self.m != self.r * self.r:
            raise ValueError(f"T = ({self.n} {self.r}; {self.r} {self.m}) is not singular")
        if self.m <= 0:
            raise DomainError(f"rank-one slices need m > 0, got {self.m}")

    def __call__(self, tau: complex, z: complex, y_p: float):
        k = self.k
        y, v = tau.imag, z.imag
        half = mpmath.mpf(1) / 2
        U = mpmath.mpf(self.n * y + 2 * self.r * v) + self.m * mpmath.mpf(y_p)
        det_Y = y * mpmath.mpf(y_p) - v * v
        x = 4 * mpmath.pi * U
        a = self.c2 * U ** (-half * k) * mpmath.whitw(half * (1 - k), half * (k - 1), x)
        if self.c1:
            a += self.c1 * U ** (k - 2) * mpmath.exp(x / 2) * mpmath.gammainc(2 - k, x)
        phase = mpmath.exp(2j * mpmath.pi * (self.n * tau.real + 2 * self.r * z.real))
        return det_Y ** (k - half) * a * phase


def rank_one_limit_closed_form(k: int, m: int, n: int, r: int, c1: float, c2: float,
                               tau: complex, z: complex) -> complex:
    """y^{1/2-k} L = c2 (4 pi)^{(1-k)/2} m^{1/2-k} e^{2 pi i (n tau + 2 r z)}; the c1 part tends to 0 for k < 3/2."""
    if c1 and k >= 1.5:
        raise DomainError(f"the c1 part has no finite limit for k = {k}")
    return complex(c2 * (4 * np.pi) ** ((1 - k) / 2) * m ** (0.5 - k)
                   * np.exp(2j * np.pi * (n * tau + 2 * r * z)))


def rank_one_limit_check(k: int, m: int, n: int, r: int, c1: float, c2: float,
                         tau: complex, z: complex, deltas: Optional[Sequence[float]] = None) -> Dict:
    """Relative error of y^{1/2-k} L against the closed form.

    The slice is evaluated in mpmath, so the default grid is the extended one.
    """
    deltas = deltas if deltas is not None else delta_grid(EXTENDED_DELTA_MAX)
    record = kohnen_limit(RankOneSlice(k, m, n, r, c1, c2), m, tau, z, deltas)
    observed = tau.imag ** (0.5 - k) * record.limit
    expected = rank_one_limit_closed_form(k, m, n, r, c1, c2, tau, z)
    return {"observed": observed, "expected": expected,
            "relative_error": abs(observed - expected) / abs(expected), "record": record}


def proportionality_spread(a: Sequence[complex], b: Sequence[complex]) -> Dict:
    """Least-squares scalar lam with a ~ lam b and the relative spread of a_i / (lam b_i)."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    lam = complex(np.vdot(b, a) / np.vdot(b, b))
    spread = float(np.max(np.abs(a - lam * b)) / np.max(np.abs(a)))
    return {"scalar": lam, "spread": spread}
