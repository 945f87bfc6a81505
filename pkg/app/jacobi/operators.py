"""Skew and holomorphic slash actions and the differential operators on H x C."""

import logging
from typing import Optional

import numpy as np

from ..config import settings
from ..errors import DomainError
from ..siegel.stencils import Derivatives
from .group import JacobiEvaluator, JacobiGroupElement, JacobiPoint

logger = logging.getLogger(__name__)

TAU = (0, 1)
Z_VAR = (2, 3)


def skew_factor(j: complex, k: float) -> complex:
    """(c conj(tau) + d)^{1-k} |c tau + d|^{-1}, from j = c tau + d; 1 - k integral."""
    return np.conj(j) ** int(round(1 - k)) / abs(j)


def skew_slash(phi: JacobiEvaluator, A: JacobiGroupElement, k: int, m: int) -> JacobiEvaluator:
    def evaluate(point: JacobiPoint) -> complex:
        j = A.c * point.tau + A.d
        return (skew_factor(j, k) * np.exp(2j * np.pi * m * A.heisenberg_exponent(point))
                * phi(A.act(point)))
    return JacobiEvaluator(evaluate, f"{phi.name}|sk", {"k": k, "m": m})


def holo_slash(phi: JacobiEvaluator, A: JacobiGroupElement, k: int, m: int) -> JacobiEvaluator:
    def evaluate(point: JacobiPoint) -> complex:
        j = A.c * point.tau + A.d
        return j ** (-k) * np.exp(2j * np.pi * m * A.heisenberg_exponent(point)) * phi(A.act(point))
    return JacobiEvaluator(evaluate, f"{phi.name}|hol", {"k": k, "m": m})


def _step(step: Optional[float]) -> float:
    return settings.fd_step if step is None else step


def _heat(d: Derivatives, m: int) -> complex:
    return 8j * np.pi * m * d.holo(*TAU) - d.holo_holo(Z_VAR, Z_VAR)


def heat_L(phi: JacobiEvaluator, m: int, P: JacobiPoint, step: Optional[float] = None) -> complex:
    """L_m = 8 pi i m d_tau - d_zz."""
    return _heat(Derivatives(phi.on_coordinates, P.coordinates(), _step(step)), m)


def lowering_sk(phi: JacobiEvaluator, m: int, P: JacobiPoint, step: Optional[float] = None) -> complex:
    """D_- = (y^2 / 4 pi m) L_m."""
    if m <= 0:
        raise DomainError(f"the lowering operator needs m > 0, got {m}")
    return P.y ** 2 / (4 * np.pi * m) * heat_L(phi, m, P, step)


def xi_sk(phi: JacobiEvaluator, k: int, m: int, step: Optional[float] = None) -> JacobiEvaluator:
    """xi^sk_{k,m} = y^{k-5/2} D_- = (y^{k-1/2} / 4 pi m) L_m."""
    if m <= 0:
        raise DomainError(f"xi^sk needs m > 0, got {m}")
    return JacobiEvaluator(lambda P: P.y ** (k - 0.5) / (4 * np.pi * m) * heat_L(phi, m, P, step),
                           f"xi_sk({phi.name})", {"k": 3 - k, "m": m})


def casimir_sk(phi: JacobiEvaluator, k: int, m: int, P: JacobiPoint, step: Optional[float] = None,
               nested_step: Optional[float] = None) -> complex:
    """The skew Casimir operator, all nine terms; third-order parts by nesting stencils."""
    inner = _step(step)
    outer = settings.nested_fd_step if nested_step is None else nested_step
    f = phi.on_coordinates
    point = P.coordinates()
    d = Derivatives(f, point, inner)

    def heat(c):
        return _heat(Derivatives(f, c, inner), m)

    def d_zz(c):
        return Derivatives(f, c, inner).holo_holo(Z_VAR, Z_VAR)

    def d_zbar_zbar(c):
        return Derivatives(f, c, inner).anti_anti(Z_VAR, Z_VAR)

    d_heat = Derivatives(heat, point, outer)
    d_zz_outer = Derivatives(d_zz, point, outer)
    d_zbar_zbar_outer = Derivatives(d_zbar_zbar, point, outer)

    T = 2j * P.y
    W = 2j * P.v
    L = _heat(d, m)
    terms = [
        -2 * T ** 2 * d_heat.anti(*TAU),
        (2 * k - 1) * T * L,
        2 * (1 - k) * T * d.anti_holo(Z_VAR, Z_VAR),
        2 * T * W * d_zz_outer.anti(*Z_VAR),
        -16j * np.pi * m * T * W * d.anti_holo(Z_VAR, TAU),
        8j * np.pi * m * (1 - k) * W * d.anti(*Z_VAR),
        2 * T ** 2 * d_zbar_zbar_outer.holo(*TAU),
        (4j * np.pi * m * W ** 2 + T) * d.anti_anti(Z_VAR, Z_VAR),
        2 * T * W * d_zbar_zbar_outer.holo(*Z_VAR),
    ]
    logger.debug(f"Skew Casimir at {P} with steps {inner} / {outer}")
    return complex(sum(terms))


def maass_jacobi_casimir(phi: JacobiEvaluator, k: int, m: int, P: JacobiPoint,
                         step: Optional[float] = None, nested_step: Optional[float] = None) -> complex:
    """C^{k,m} = (1 / 8 pi i m)(y^{1/2-k} C^sk_{1-k,m}(y^{k-1/2} phi) + (2k - 1) phi)."""
    if m <= 0:
        raise DomainError(f"the Maass-Jacobi Casimir needs m > 0, got {m}")
    twisted = JacobiEvaluator(lambda Q: Q.y ** (k - 0.5) * phi(Q), f"y^(k-1/2) {phi.name}")
    skew = casimir_sk(twisted, 1 - k, m, P, step, nested_step)
    return (P.y ** (0.5 - k) * skew + (2 * k - 1) * phi(P)) / (8j * np.pi * m)
