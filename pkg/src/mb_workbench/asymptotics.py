"""Scaling maps, saddle-point constants and the limiting distributions."""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ParameterError
from .fields import ModelParams
from .fredholm import fdet_semiinfinite
from .kernels import airy_kernel_fn, khe_tilde_kernel
from .specfun import dilog


@dataclass(frozen=True)
class TWConstants:
    b: float
    z_c: float
    v_c: float
    c1: float
    c2: float


def _check_shape(b: float, eta: float, theta: float) -> None:
    if not 0 < b < 1:
        raise ParameterError(f"b = sqrt(a) must lie in (0, 1), got {b}")
    if eta <= 0 or theta <= 0:
        raise ParameterError("eta and theta must be positive")


def critical_point(b: float, eta: float, theta: float) -> float:
    """Positive root of theta z^2 + b (eta - theta) z - eta = 0."""
    _check_shape(b, eta, theta)
    return (b * (theta - eta) + math.sqrt(4 * eta * theta + b**2 * (theta - eta) ** 2)) / (2 * theta)


def _check_domain(z: float, b: float) -> None:
    if not (0 < b * z < 1 and 0 < b / z < 1):
        raise ParameterError(f"S is evaluated with 0 < bz < 1 and 0 < b/z < 1, got z={z}, b={b}")


def action_S(z: float, v: float, b: float, eta: float, theta: float) -> float:
    _check_domain(z, b)
    return float(dilog(b * z)) / eta - float(dilog(b / z)) / theta - v * math.log(z)


def first_log_derivative(z: float, v: float, b: float, eta: float, theta: float) -> float:
    """(z d/dz) S."""
    _check_domain(z, b)
    return -math.log1p(-b * z) / eta - math.log1p(-b / z) / theta - v


def second_log_derivative(z: float, b: float, eta: float, theta: float) -> float:
    _check_domain(z, b)
    return b * z / (1 - b * z) / eta - b / (z - b) / theta


def third_log_derivative(z: float, b: float, eta: float, theta: float) -> float:
    _check_domain(z, b)
    u = b / z
    return b * z / (1 - b * z) ** 2 / eta + u / (1 - u) ** 2 / theta


def tw_constants(a: float, eta: float = 1.0, theta: float = 1.0) -> TWConstants:
    if not 0 < a < 1:
        raise ParameterError(f"a must lie in (0, 1), got {a}")
    b = math.sqrt(a)
    z_c = critical_point(b, eta, theta)
    v_c = -math.log1p(-b * z_c) / eta - math.log1p(-b / z_c) / theta
    c2 = (third_log_derivative(z_c, b, eta, theta) / 2) ** (1 / 3)
    return TWConstants(b=b, z_c=z_c, v_c=v_c, c1=v_c, c2=c2)


def _check_eps(eps: float) -> None:
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")


def thm1_center(L: float, eps: float, eta: float = 1.0, theta: float = 1.0) -> float:
    """eps L + log(eps eta)/eta + log(eps theta)/theta."""
    _check_eps(eps)
    return eps * L + math.log(eps * eta) / eta + math.log(eps * theta) / theta


def thm1_level(s: float, eps: float, eta: float = 1.0, theta: float = 1.0) -> float:
    _check_eps(eps)
    return (s - math.log(eps * eta) / eta - math.log(eps * theta) / theta) / eps


def thm1_limit_params(alpha: float, eps: float, eta: float = 1.0, theta: float = 1.0) -> ModelParams:
    """Parameters a = exp(-alpha eps), q = exp(-eps) on the infinite quadrant."""
    _check_eps(eps)
    return ModelParams(a=math.exp(-alpha * eps), q=math.exp(-eps), eta=eta, theta=theta, alpha=alpha)


def thm2_center(L: float, eps: float, consts: TWConstants) -> float:
    _check_eps(eps)
    return (L - consts.c1 / eps) / (consts.c2 * eps ** (-1 / 3))


def thm4_scale(L: float, M: int, N: int, eta: float = 1.0, theta: float = 1.0) -> float:
    if M < 1 or N < 1:
        raise ParameterError("M and N must be at least 1")
    return L * M ** (-1 / eta) * N ** (-1 / theta)


def gumbel_cdf(s: float) -> float:
    return math.exp(-math.exp(-s))


def F_alpha(s: float, alpha: float, eta: float = 1.0, theta: float = 1.0, tol: float = 1e-10) -> float:
    """det(1 - K~_he) on L2(s, inf)."""
    return fdet_semiinfinite(khe_tilde_kernel(alpha, eta, theta), s, tol=tol).probability()


def F_TW(s: float, tol: float = 1e-10) -> float:
    """Tracy-Widom GUE distribution from the Airy kernel."""
    return fdet_semiinfinite(airy_kernel_fn(), s, tol=tol).probability()


class Centering(str, Enum):
    DERIVED = "derived"
    PRINTED = "printed"


def interpolation_argument(alpha: float, s: float, centering: Centering | str = Centering.DERIVED) -> float:
    """Argument of F_alpha that tracks F_TW(s) as alpha grows.

    The derived centring follows the smallest point of the Bessel process near alpha^2/4;
    the printed one is -2 log(2(alpha - 1)) + (alpha - 1)^(-2/3) s.
    """
    if Centering(centering) is Centering.PRINTED:
        if alpha <= 1:
            raise ParameterError("the printed centring needs alpha > 1")
        return -2 * math.log(2 * (alpha - 1)) + (alpha - 1) ** (-2 / 3) * s
    if alpha <= 0:
        raise ParameterError("the derived centring needs alpha > 0")
    return -2 * math.log(alpha / 2) + (2 / alpha) ** (2 / 3) * s
