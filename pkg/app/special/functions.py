"""Whittaker functions, incomplete Gamma and the H-function."""

import logging
import math
from typing import Callable, Optional, Union

import mpmath
from scipy import integrate

from ..config import settings
from ..errors import DegenerateParameterError, DomainError

logger = logging.getLogger(__name__)


def _dps(dps: Optional[int]) -> int:
    return dps if dps is not None else settings.mp_dps


def _is_nonpositive_integer(value: float) -> bool:
    return value <= 0 and float(value).is_integer()


def whittaker(kind: str, nu: float, mu: float, y: float, dps: Optional[int] = None) -> float:
    """M_{nu,mu}(y) or W_{nu,mu}(y) for y > 0."""
    if y <= 0:
        raise DomainError(f"Whittaker functions are evaluated for y > 0, got {y}")
    kind = kind.upper()
    with mpmath.workdps(_dps(dps)):
        if kind == "M":
            if _is_nonpositive_integer(1 + 2 * mu):
                raise DegenerateParameterError(
                    f"M_{{{nu},{mu}}} is undefined: 1+2mu = {1 + 2 * mu} is a nonpositive integer")
            value = mpmath.whitm(nu, mu, y)
        elif kind == "W":
            value = mpmath.whitw(nu, mu, y)
        else:
            raise ValueError(f"unknown Whittaker kind '{kind}', expected M or W")
        if not mpmath.isfinite(value) or abs(mpmath.im(value)) > abs(mpmath.re(value)) * 1e-12 + 1e-300:
            raise DegenerateParameterError(f"{kind}_{{{nu},{mu}}}({y}) has no finite real value")
        return float(mpmath.re(value))


def whittaker_ode_residual(kind: str, nu: float, mu: float, y: float) -> float:
    """f'' + (-1/4 + nu/y + (1/4 - mu^2)/y^2) f for the chosen Whittaker function."""
    with mpmath.workdps(settings.mp_dps):
        fn = mpmath.whitm if kind.upper() == "M" else mpmath.whitw
        second = mpmath.diff(lambda t: fn(nu, mu, t), y, 2)
        value = fn(nu, mu, y)
        t = mpmath.mpf(y)
        residual = second + (-mpmath.mpf(1) / 4 + nu / t + (mpmath.mpf(1) / 4 - mu ** 2) / t ** 2) * value
        return float(abs(residual))


def incomplete_gamma(a: float, y: float, dps: Optional[int] = None) -> float:
    """Upper incomplete Gamma function for y > 0."""
    if y <= 0:
        raise DomainError(f"incomplete Gamma is evaluated for y > 0, got {y}")
    with mpmath.workdps(_dps(dps)):
        return float(mpmath.gammainc(a, y))


def H_function(w: float, k: int, dps: Optional[int] = None) -> Union[float, complex]:
    """H(w) = e^{-w} Gamma(3/2 - k, -2w); complex continuation for w > 0."""
    if w == 0:
        raise DomainError("H(w) is not defined at w = 0")
    with mpmath.workdps(_dps(dps)):
        value = mpmath.exp(-w) * mpmath.gammainc(mpmath.mpf(3) / 2 - k, -2 * mpmath.mpf(w))
        if w < 0:
            return float(mpmath.re(value))
        return complex(value)


def H_function_quadrature(w: float, k: int) -> float:
    """Defining integral e^{-w} int_{-2w}^inf e^{-t} t^{1/2-k} dt, w < 0 only."""
    if w >= 0:
        raise DomainError("the quadrature form of H is used for w < 0")
    integral, _ = integrate.quad(lambda t: math.exp(-t) * t ** (0.5 - k), -2 * w, math.inf,
                                 epsabs=0.0, epsrel=1e-12, limit=200)
    return math.exp(-w) * integral


def confluent_residual(kind: str, k: int, f: Callable, u: float) -> float:
    """|u f'' + c f' + (1 - k - u) f| at the scale-free normalization (alpha = 1/2, beta = k - 1/2)."""
    c = 3 - k if kind == "phi" else k
    with mpmath.workdps(settings.mp_dps):
        u = mpmath.mpf(u)
        value = f(u)
        first = mpmath.diff(f, u, 1)
        second = mpmath.diff(f, u, 2)
        residual = u * second + c * first + (1 - k - u) * value
        return float(abs(residual) / max(abs(value), mpmath.mpf("1e-300")))


def retained_phi(k: int) -> Callable:
    """u^{k-2} e^{u} Gamma(2-k, 2u) at the scale-free normalization."""
    return lambda u: u ** (k - 2) * mpmath.exp(u) * mpmath.gammainc(2 - k, 2 * u)


def retained_psi(k: int) -> Callable:
    """u^{-k/2} W_{(1-k)/2,(k-1)/2}(2u) at the scale-free normalization."""
    half = mpmath.mpf(1) / 2
    return lambda u: u ** (-half * k) * mpmath.whitw(half * (1 - k), half * (k - 1), 2 * u)


def rank_one_retained(k: int, u: float, c1: float, c2: float) -> float:
    """c1 u^{k-2} e^{2 pi u} Gamma(2-k, 4 pi u) + c2 u^{-k/2} W_{(1-k)/2,(k-1)/2}(4 pi u)."""
    if u <= 0:
        raise DomainError(f"rank-one coefficients are evaluated for u > 0, got {u}")
    with mpmath.workdps(settings.mp_dps):
        two_pi = 2 * mpmath.pi
        scaled = two_pi * u
        phi = retained_phi(k)(scaled) * two_pi ** (2 - k)
        psi = retained_psi(k)(scaled) * two_pi ** (mpmath.mpf(k) / 2)
        return float(c1 * phi + c2 * psi)
