"""Fourier-Jacobi slices of Siegel functions and Fourier coefficients of Jacobi functions."""

import logging
from dataclasses import asdict, dataclass
from typing import Dict

import numpy as np

from ..siegel.domain import Evaluator, SiegelPoint
from ..special.functions import H_function
from .group import JacobiEvaluator, JacobiPoint

logger = logging.getLogger(__name__)

CLASS_TAGS = ("c0", "c+", "c-")


def fourier_jacobi_coeff(F: Evaluator, m: int, tau: complex, z: complex, y_p: float, N: int = 64) -> complex:
    """phi_m(tau, z, y') = int_0^1 F(Z) e^{-2 pi i m x'} dx' by the N-point periodic trapezoid."""
    nodes = np.arange(N) / N
    values = np.array([F(SiegelPoint(tau, z, complex(x, y_p))) for x in nodes])
    return complex(np.mean(values * np.exp(-2j * np.pi * m * nodes)))


@dataclass
class FourierJacobiSlice:
    """(tau, z, y') -> phi_m(tau, z, y') of F, the input shape kohnen_limit expects."""
    F: Evaluator
    m: int
    N: int = 64

    def __call__(self, tau: complex, z: complex, y_p: float) -> complex:
        return fourier_jacobi_coeff(self.F, self.m, tau, z, y_p, self.N)


def fourier_coeff_jacobi(phi: JacobiEvaluator, n: int, r: int, y: float, v: float = 0.0, N: int = 32) -> complex:
    """Coefficient of q^n zeta^r at height (y, v), by the periodic trapezoid over (x, u) in [0, 1]^2.

    The y-dependence left over (1, e^{-pi D y/m} or the H-profile) stays in the value.
    """
    nodes = np.arange(N) / N
    total = 0j
    for x in nodes:
        for u in nodes:
            total += phi(JacobiPoint(complex(x, y), complex(u, v))) * np.exp(-2j * np.pi * (n * x + r * u))
    return complex(total / N ** 2 * np.exp(2 * np.pi * (n * y + r * v)))


def discriminant(n: int, r: int, m: int) -> int:
    return r * r - 4 * m * n


def classify_fourier_term(n: int, r: int, m: int) -> str:
    D = discriminant(n, r, m)
    if D == 0:
        return "c0"
    return "c+" if D > 0 else "c-"


def profile(tag: str, n: int, r: int, m: int, k: int, y: float) -> complex:
    """y-profile of a term of the given class in a harmonic skew-Maass-Jacobi expansion."""
    D = discriminant(n, r, m)
    if tag == "c0":
        return y ** (1.5 - k)
    if tag == "c+":
        return np.exp(-np.pi * D * y / m)
    if tag == "c-":
        w = np.pi * D * y / (2 * m)
        return H_function(w, k) * np.exp(-w)
    raise ValueError(f"unknown class tag '{tag}', expected one of {CLASS_TAGS}")


@dataclass
class JacobiFourierData:
    n: int
    r: int
    m: int
    discriminant: int
    tag: str
    value: complex

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["value"] = [self.value.real, self.value.imag]
        return data


def jacobi_fourier_data(phi: JacobiEvaluator, n: int, r: int, m: int, y: float, N: int = 32) -> JacobiFourierData:
    value = fourier_coeff_jacobi(phi, n, r, y, N=N)
    return JacobiFourierData(n, r, m, discriminant(n, r, m), classify_fourier_term(n, r, m), value)


def profile_ratio_defect(phi: JacobiEvaluator, n: int, r: int, m: int, k: int,
                         y1: float, y2: float, N: int = 32) -> float:
    """Relative mismatch between c(y2)/c(y1) and the class profile ratio."""
    tag = classify_fourier_term(n, r, m)
    observed = fourier_coeff_jacobi(phi, n, r, y2, N=N) / fourier_coeff_jacobi(phi, n, r, y1, N=N)
    expected = profile(tag, n, r, m, k, y2) / profile(tag, n, r, m, k, y1)
    return float(abs(observed - expected) / abs(expected))
