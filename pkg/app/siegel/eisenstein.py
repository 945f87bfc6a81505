"""Truncated Eisenstein-type coset sums on H_2 and the unfolded Fourier-Jacobi coefficient.

All sums run over a CosetFamily and are reduced with a fixed pairwise order, so
values are reproducible across runs and thread counts.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence

import mpmath
import numpy as np
from scipy import special

from ..errors import ConvergenceError, DomainError
from .cosets import CosetFamily, XOrbitFamily, translation_orbits
from .domain import Evaluator, SiegelPoint, SymplecticMatrix, slash_factor

logger = logging.getLogger(__name__)


def tree_sum(values: np.ndarray) -> complex:
    """Pairwise summation in a fixed order."""
    values = np.asarray(values, dtype=complex).ravel()
    if len(values) == 0:
        return 0j
    while len(values) > 1:
        if len(values) % 2:
            values = np.append(values, 0j)
        values = values[0::2] + values[1::2]
    return complex(values[0])


def automorphy_factors(C: np.ndarray, D: np.ndarray, point: SiegelPoint) -> np.ndarray:
    """det(CZ + D) for every pair in the stack."""
    W = np.einsum("nij,jk->nik", C.astype(complex), point.Z) + D
    return W[:, 0, 0] * W[:, 1, 1] - W[:, 0, 1] * W[:, 1, 0]


def _require_convergence(alpha: float, beta: float, what: str) -> None:
    if not alpha + beta > 3:
        raise ConvergenceError(f"{what} needs alpha + beta > 3 for absolute convergence, got {alpha + beta}")


def _coset_sum(point: SiegelPoint, family: CosetFamily, alpha: float, beta: float, s: float) -> complex:
    j = automorphy_factors(family.C, family.D, point)
    return tree_sum(slash_factor(j, alpha, beta) * np.abs(j) ** (-2.0 * s))


def eisenstein_P(k: int, s: float, Z: SiegelPoint, family: CosetFamily) -> complex:
    """P_{k,s}(Z) = sum over the family of ((det Y)^s |_{(1/2, k-1/2)} M)(Z)."""
    if not 2 * s + k > 3:
        raise ConvergenceError(f"P_(k,s) needs 2s + k > 3, got k = {k}, s = {s}")
    return Z.det_Y ** s * _coset_sum(Z, family, 0.5, k - 0.5, s)


def maass_eisenstein(alpha: float, beta: float, Z: SiegelPoint, family: CosetFamily) -> complex:
    """E_{alpha,beta}(Z) = sum det(CZ+D)^{-alpha} det(C conj(Z)+D)^{-beta}."""
    _require_convergence(alpha, beta, "E_(alpha,beta)")
    return _coset_sum(Z, family, alpha, beta, 0.0)


def kohnen_eisenstein(k_prime: int, s_prime: float, Z: SiegelPoint, family: CosetFamily) -> complex:
    """sum ((det Y)^{s'} |_{(k', 0)} M)(Z)."""
    _require_convergence(k_prime + s_prime, s_prime, "Kohnen-Eisenstein series")
    return Z.det_Y ** s_prime * _coset_sum(Z, family, k_prime, 0.0, s_prime)


def holomorphic_eisenstein(weight: int, Z: SiegelPoint, family: CosetFamily) -> complex:
    _require_convergence(weight, 0.0, "holomorphic Eisenstein series")
    return _coset_sum(Z, family, weight, 0.0, 0.0)


def eisenstein_P_evaluator(k: int, s: float, family: CosetFamily) -> Evaluator:
    return Evaluator(lambda P: eisenstein_P(k, s, P, family), f"P_({k},{s})",
                     {"alpha": 0.5, "beta": k - 0.5, "bound": family.bound, "cosets": len(family)})


def invariance_defect(k: int, s: float, Z: SiegelPoint, M: SymplecticMatrix, family: CosetFamily) -> float:
    """|(P |_{(1/2, k-1/2)} M)(Z) - P(Z)| for the truncated series."""
    j = M.automorphy(Z)
    slashed = complex(slash_factor(j, 0.5, k - 0.5)) * eisenstein_P(k, s, M.act(Z), family)
    return abs(slashed - eisenstein_P(k, s, Z, family))


def ray_growth_slopes(k: int, s: float, family: CosetFamily, ts: Sequence[float]) -> List[float]:
    """Log-log slopes of |P_{k,s}(i t I_2)| against tr Y = 2t."""
    logs = [np.log(abs(eisenstein_P(k, s, SiegelPoint(1j * t, 0, 1j * t), family))) for t in ts]
    return [float((logs[i + 1] - logs[i]) / (np.log(ts[i + 1]) - np.log(ts[i]))) for i in range(len(ts) - 1)]


@dataclass
class UnfoldedFourierJacobi:
    """m-th Fourier-Jacobi coefficient of (det Y)^{k-1/2} P_{k,s}, unfolded over x'-orbits.

    Each orbit under x' -> x' + 1 contributes a line integral over x' in R,
    which has a closed form in the Tricomi function U. Cosets fixed by the
    translation only feed the m = 0 coefficient and are dropped for m > 0.
    """
    k: int
    s: float
    m: int
    orbits: XOrbitFamily

    def __post_init__(self):
        if self.m <= 0:
            raise DomainError(f"the unfolded coefficient is implemented for m > 0, got m = {self.m}")
        if not 2 * self.s + self.k > 3:
            raise ConvergenceError(f"P_(k,s) needs 2s + k > 3, got k = {self.k}, s = {self.s}")
        self.a = 0.5 + self.s
        self.b = self.k - 0.5 + self.s
        self._constant = (2 * np.pi / special.gamma(self.a)) * np.exp(0.5j * np.pi * (self.b - self.a))

    @classmethod
    def from_family(cls, k: int, s: float, m: int, family: CosetFamily) -> "UnfoldedFourierJacobi":
        return cls(k, s, m, translation_orbits(family))

    def _linear_data(self, tau: complex, z: complex):
        """det(CZ + D) = alpha_c (tau' - tau_0) for every orbit representative."""
        C, D = self.orbits.C.astype(complex), self.orbits.D.astype(complex)
        first = C[:, 0, 0] * tau + C[:, 0, 1] * z + D[:, 0, 0]
        lower = C[:, 1, 0] * tau + C[:, 1, 1] * z + D[:, 1, 0]
        alpha_c = C[:, 1, 1] * first - C[:, 0, 1] * lower
        beta_c = first * (C[:, 1, 0] * z + D[:, 1, 1]) - (C[:, 0, 0] * z + D[:, 0, 1]) * lower
        if np.any(np.abs(alpha_c) < 1e-300):
            raise DomainError("an orbit representative does not depend on tau'")
        return alpha_c, -beta_c / alpha_c

    def _prefactor(self, alpha_c: np.ndarray, tau_0: np.ndarray) -> np.ndarray:
        k, s = self.k, self.s
        return (alpha_c ** (k - 1) * np.abs(alpha_c) ** (1 - 2 * k - 2 * s)
                * np.exp(-2j * np.pi * self.m * tau_0) * self._constant)

    def _tricomi(self, x: np.ndarray) -> np.ndarray:
        a, b = 1 - self.a, 2 - self.a - self.b
        values = special.hyperu(a, b, x)
        bad = ~np.isfinite(values)
        for i in np.flatnonzero(bad):
            values[i] = float(mpmath.hyperu(a, b, float(x[i])))
        return values

    def _y0(self, tau_0: np.ndarray, y_p: float) -> np.ndarray:
        Y0 = y_p - tau_0.imag
        if np.any(Y0 <= 0):
            raise DomainError("(tau, z, y') is outside H_2 for some orbit")
        return Y0

    def __call__(self, tau: complex, z: complex, y_p: float) -> complex:
        """phi_m(tau, z, y')."""
        y, v = tau.imag, z.imag
        det_Y = y * y_p - v * v
        if y <= 0 or det_Y <= 0:
            raise DomainError(f"(tau, z, y') = ({tau}, {z}, {y_p}) is outside H_2")
        if len(self.orbits.C) == 0:
            return 0j
        alpha_c, tau_0 = self._linear_data(tau, z)
        Y0 = self._y0(tau_0, y_p)
        x = 4 * np.pi * self.m * Y0
        # e(-m Re tau_0) exp(-2 pi m Y0) = exp(-2 pi i m tau_0) exp(-2 pi m y')
        terms = (self._prefactor(alpha_c, tau_0) * np.exp(-2 * np.pi * self.m * y_p)
                 * (2 * Y0) ** (1 - self.a - self.b) * self._tricomi(x))
        return det_Y ** self.b * tree_sum(terms)

    def compensated(self, tau: complex, z: complex, delta: float) -> complex:
        """e^{delta/2} e^{2 pi m v^2/y} phi_m(tau, z, delta/(4 pi m) + v^2/y), without cancellation."""
        y, v = tau.imag, z.imag
        if len(self.orbits.C) == 0:
            return 0j
        y_p = delta / (4 * np.pi * self.m) + v * v / y
        alpha_c, tau_0 = self._linear_data(tau, z)
        Y0 = self._y0(tau_0, y_p)
        x = 4 * np.pi * self.m * Y0
        ratio = (delta / x) ** self.b * x ** (1 - self.a) * self._tricomi(x)
        return tree_sum(self._limit_terms(y, alpha_c, tau_0) * ratio)

    def _limit_terms(self, y: float, alpha_c: np.ndarray, tau_0: np.ndarray) -> np.ndarray:
        scale = 2.0 ** (1 - self.a - self.b) * (4 * np.pi * self.m) ** (self.a - 1)
        return y ** self.b * self._prefactor(alpha_c, tau_0) * scale

    def limit(self, tau: complex, z: complex) -> complex:
        """The delta -> infinity limit, summed orbit by orbit."""
        if len(self.orbits.C) == 0:
            return 0j
        alpha_c, tau_0 = self._linear_data(tau, z)
        return tree_sum(self._limit_terms(tau.imag, alpha_c, tau_0))
