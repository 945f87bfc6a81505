"""Truncated skew-holomorphic and holomorphic Jacobi Eisenstein series."""

import logging

import numpy as np

from ..errors import ConvergenceError
from ..siegel.eisenstein import tree_sum
from .group import JacobiCosetFamily, JacobiEvaluator, JacobiPoint

logger = logging.getLogger(__name__)

VARIANTS = ("skew-1", "skew-psi", "holomorphic")


def _terms(family: JacobiCosetFamily, P: JacobiPoint, m: int):
    """c tau + d and e(m(...)) for every coset."""
    tau, z = P.tau, P.z
    j = family.c * tau + family.d
    shifted = z + family.lam * tau + family.mu
    exponent = -family.c * shifted ** 2 / j + family.lam ** 2 * tau + 2 * family.lam * z
    return j, np.exp(2j * np.pi * m * exponent)


def skew_eisenstein(k: int, m: int, s_prime: float, P: JacobiPoint, family: JacobiCosetFamily,
                    variant: str = "skew-1") -> complex:
    """Truncated sum over the family of one of three seeds.

    skew-1:      sum (1 |^sk_{k,m} A)
    skew-psi:    sum (y^{3/2-k} |^sk_{k,m} A)
    holomorphic: sum (y^{s'} |_{k,m} A), with k the holomorphic weight
    s_prime is only read by the holomorphic variant.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant '{variant}', expected one of {VARIANTS}")
    if variant == "holomorphic":
        weight, s = k, s_prime
    else:
        # the skew seed y^p is the holomorphic-slash seed y^{k-1/2+p} of weight 1-k
        p = 0.0 if variant == "skew-1" else 1.5 - k
        weight, s = 1 - k, k - 0.5 + p
    if not s > (3 - weight) / 2:
        raise ConvergenceError(f"Jacobi Eisenstein series of weight {weight} needs s' > {(3 - weight) / 2}, got {s}")
    j, heat = _terms(family, P, m)
    y = P.y
    if variant == "holomorphic":
        values = j ** (-weight) * heat * (y / np.abs(j) ** 2) ** s
    else:
        values = np.conj(j) ** (1 - k) / np.abs(j) * heat * (y / np.abs(j) ** 2) ** p
    return tree_sum(values)


def holomorphic_jacobi_eisenstein(weight: int, m: int, P: JacobiPoint, family: JacobiCosetFamily) -> complex:
    """sum (1 |_{weight,m} A)."""
    return skew_eisenstein(weight, m, 0.0, P, family, "holomorphic")


def skew_eisenstein_evaluator(k: int, m: int, family: JacobiCosetFamily, variant: str = "skew-1",
                              s_prime: float = 0.0) -> JacobiEvaluator:
    return JacobiEvaluator(lambda P: skew_eisenstein(k, m, s_prime, P, family, variant),
                           f"E^{variant}_({k},{m})", {"k": k, "m": m, "bound": family.bound})
