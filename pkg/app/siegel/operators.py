"""Finite-difference realizations of the invariant operators on H_2.

Wirtinger conventions: d/dw = (d/da - i d/db)/2, d_Z = (d_tau, d_z/2; d_z/2, d_tau').
"""

import logging
from typing import Optional

import numpy as np

from ..config import settings
from .domain import Evaluator, SiegelPoint
from .stencils import Derivatives

logger = logging.getLogger(__name__)

TAU = (0, 1)
Z_VAR = (2, 3)
TAU_P = (4, 5)

_PARTIALS = {
    "x": ("real", 0), "y": ("real", 1), "u": ("real", 2), "v": ("real", 3),
    "xp": ("real", 4), "yp": ("real", 5),
    "tau": ("holo", TAU), "tau_bar": ("anti", TAU),
    "z": ("holo", Z_VAR), "z_bar": ("anti", Z_VAR),
    "tau_p": ("holo", TAU_P), "tau_p_bar": ("anti", TAU_P),
}

# entry (i, j) of d_Z -> (complex variable, factor)
_MATRIX_ENTRIES = {(0, 0): (TAU, 1.0), (0, 1): (Z_VAR, 0.5), (1, 0): (Z_VAR, 0.5), (1, 1): (TAU_P, 1.0)}


def _step(step: Optional[float]) -> float:
    return settings.fd_step if step is None else step


def _derivatives(G: Evaluator, Z: SiegelPoint, step: Optional[float]) -> Derivatives:
    return Derivatives(G.on_coordinates, Z.coordinates(), _step(step))


def numeric_partial(G: Evaluator, coordinate: str, Z: SiegelPoint, step: Optional[float] = None) -> complex:
    """One real or Wirtinger partial of G at Z by a five-point central stencil."""
    try:
        kind, index = _PARTIALS[coordinate]
    except KeyError:
        raise ValueError(f"unknown coordinate '{coordinate}', known: {sorted(_PARTIALS)}") from None
    d = _derivatives(G, Z, step)
    if kind == "real":
        return d.first(index)
    return d.holo(*index) if kind == "holo" else d.anti(*index)


def _omega_from(d: Derivatives, Z: SiegelPoint, alpha: float, beta: float) -> np.ndarray:
    Y = Z.Y
    dZ = np.zeros((2, 2), dtype=complex)
    dZbar = np.zeros((2, 2), dtype=complex)
    for (i, j), (var, factor) in _MATRIX_ENTRIES.items():
        dZ[i, j] = factor * d.holo(*var)
        dZbar[i, j] = factor * d.anti(*var)
    # second[l, p, m, j] = (d_Zbar)_{lp} (d_Z)_{mj} G
    second = np.zeros((2, 2, 2, 2), dtype=complex)
    for (l, p), (var1, f1) in _MATRIX_ENTRIES.items():
        for (m, j), (var2, f2) in _MATRIX_ENTRIES.items():
            second[l, p, m, j] = f1 * f2 * d.anti_holo(var1, var2)
    quadratic = np.einsum("ip,ml,lpmj->ij", Y, Y, second)
    return -4 * quadratic - 2j * beta * (Y @ dZ) + 2j * alpha * (Y @ dZbar)


def omega_apply(G: Evaluator, Z: SiegelPoint, alpha: float, beta: float,
                step: Optional[float] = None) -> np.ndarray:
    """-4 Y t(Y d_Zbar) d_Z - 2i beta Y d_Z + 2i alpha Y d_Zbar applied to G at Z."""
    return _omega_from(_derivatives(G, Z, step), Z, alpha, beta)


def h1_apply(G: Evaluator, Z: SiegelPoint, alpha: float, beta: float, step: Optional[float] = None) -> complex:
    """tr(Omega - alpha(beta - 3/2) I)."""
    omega = omega_apply(G, Z, alpha, beta, step)
    return complex(np.trace(omega) - 2 * alpha * (beta - 1.5) * G(Z))


def _maass_M_from(d: Derivatives, value: complex, alpha: float, Z: SiegelPoint) -> complex:
    y, v, yp = Z.tau.imag, Z.z.imag, Z.tau_p.imag
    first = 2j * y * d.holo(*TAU) + 2j * v * d.holo(*Z_VAR) + 2j * yp * d.holo(*TAU_P)
    second = d.holo_holo(TAU, TAU_P) - 0.25 * d.holo_holo(Z_VAR, Z_VAR)
    return alpha * (alpha - 0.5) * value + (alpha - 0.5) * first - 4 * Z.det_Y * second


def maass_M(G: Evaluator, alpha: float, Z: SiegelPoint, step: Optional[float] = None) -> complex:
    """M_alpha G = alpha(alpha-1/2) G + (alpha-1/2)(2i Y d_Z terms) G + det(Z-Zbar)(d_tau d_tau' - d_z^2/4) G."""
    d = _derivatives(G, Z, step)
    return _maass_M_from(d, G(Z), alpha, Z)


def reflect(G: Evaluator) -> Evaluator:
    """Z -> G(-conj(Z))."""
    return Evaluator(lambda P: G(P.reflected()), f"i({G.name})", G.meta)


def maass_N(G: Evaluator, beta: float, Z: SiegelPoint, step: Optional[float] = None) -> complex:
    """N_beta = i M_beta i with i(G)(Z) = G(-conj(Z))."""
    return maass_M(reflect(G), beta, Z.reflected(), step)


def maass_N_direct(G: Evaluator, beta: float, Z: SiegelPoint, step: Optional[float] = None) -> complex:
    """N_beta in anti-holomorphic derivatives at Z itself; agrees with maass_N."""
    d = _derivatives(G, Z, step)
    y, v, yp = Z.tau.imag, Z.z.imag, Z.tau_p.imag
    first = 2j * y * d.anti(*TAU) + 2j * v * d.anti(*Z_VAR) + 2j * yp * d.anti(*TAU_P)
    second = d.anti_anti(TAU, TAU_P) - 0.25 * d.anti_anti(Z_VAR, Z_VAR)
    return beta * (beta - 0.5) * G(Z) - (beta - 0.5) * first - 4 * Z.det_Y * second


def maass_M_evaluator(G: Evaluator, alpha: float, step: Optional[float] = None) -> Evaluator:
    return Evaluator(lambda P: maass_M(G, alpha, P, step), f"M_{alpha}({G.name})")


def xi2(G: Evaluator, k: float, Z: SiegelPoint, step: Optional[float] = None) -> complex:
    """det(Y)^{k-3/2} M_{1/2} G."""
    return Z.det_Y ** (k - 1.5) * maass_M(G, 0.5, Z, step)


def xi2_dual(G: Evaluator, k: float, Z: SiegelPoint, step: Optional[float] = None) -> complex:
    """det(Y)^{k-3/2} N_0 G."""
    return Z.det_Y ** (k - 1.5) * maass_N(G, 0.0, Z, step)


def casimir_C(G: Evaluator, k: float, Z: SiegelPoint, step: Optional[float] = None) -> complex:
    """N_{k-3/2} M_{1/2} G by nested finite differences."""
    step = settings.nested_fd_step if step is None else step
    inner = maass_M_evaluator(G, 0.5, step)
    logger.debug(f"Nested stencil for C at step {step}")
    return maass_N(inner, k - 1.5, Z, step)
