"""Special functions used by the kernels: thin checked wrappers over scipy.special plus q-Pochhammer symbols."""

import math

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from .errors import NumericalError, ParameterError

ComplexVal = complex

AIRY_RANGE = (-15.0, 30.0)
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _is_pole(z: ArrayLike) -> bool:
    z = np.asarray(z)
    real_axis = np.imag(z) == 0
    re = np.real(z)
    return bool(np.any(real_axis & (re <= 0) & (re == np.round(re))))


def log_gamma(z: ArrayLike) -> np.ndarray | complex:
    """Principal branch of log Gamma for real or complex arguments."""
    if _is_pole(z):
        raise NumericalError(f"log_gamma has a pole at {z}")
    return special.loggamma(np.asarray(z, dtype=complex))[()]


def qpoch_finite(x: ArrayLike, u: float, n: int) -> np.ndarray | float | complex:
    """(x; u)_n = prod_{0 <= i < n} (1 - x u^i)."""
    if n < 0:
        raise ParameterError(f"Pochhammer length must be non-negative, got {n}")
    x = np.asarray(x)
    powers = float(u) ** np.arange(n)
    return np.prod(1.0 - x[..., None] * powers, axis=-1)[()]


def _inf_terms(x: ArrayLike, u: float, tol: float) -> int:
    if not 0.0 <= u < 1.0:
        raise ParameterError(f"infinite q-Pochhammer needs 0 <= u < 1, got {u}")
    scale = float(np.max(np.abs(x))) if np.size(x) else 0.0
    if scale == 0.0 or u == 0.0:
        return 1
    # stop once |x u^i| < tol (1 - u)
    return max(1, math.ceil(math.log(tol * (1.0 - u) / scale) / math.log(u)) + 1)


def qpoch_inf(x: ArrayLike, u: float, tol: float = 1e-17) -> np.ndarray | float | complex:
    return qpoch_finite(x, u, _inf_terms(x, u, tol))


def log_qpoch_inf(x: ArrayLike, u: float, tol: float = 1e-17) -> np.ndarray | float:
    """log (x; u)_inf for real x < 1, summed as log1p terms."""
    x = np.asarray(x, dtype=float)
    if np.any(x >= 1.0):
        raise ParameterError("log_qpoch_inf needs x < 1")
    powers = u ** np.arange(_inf_terms(x, u, tol))
    return np.sum(np.log1p(-x[..., None] * powers), axis=-1)[()]


def log_qpoch_finite(x: ArrayLike, u: float, n: int) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    if n < 0:
        raise ParameterError(f"Pochhammer length must be non-negative, got {n}")
    powers = u ** np.arange(n)
    return np.sum(np.log1p(-x[..., None] * powers), axis=-1)[()]


def qpoch_asymptotic(c: float, r: float) -> float:
    """Small-r expansion of log (u^c; u)_inf with u = exp(-r)."""
    if r <= 0:
        raise ParameterError(f"r must be positive, got {r}")
    if c <= 0 and c == round(c):
        raise NumericalError(f"Gamma has a pole at c = {c}")
    return -(math.pi**2) / (6 * r) + (0.5 - c) * math.log(r) + _LOG_SQRT_2PI - float(special.gammaln(c))


def dilog(x: ArrayLike) -> np.ndarray | float:
    """Li_2(x) for real x <= 1."""
    x = np.asarray(x, dtype=float)
    if np.any(x > 1.0):
        raise ParameterError("dilog is real only for x <= 1")
    return special.spence(1.0 - x)[()]


def bessel_j(nu: float, x: ArrayLike) -> np.ndarray | float:
    if nu < 0:
        raise ParameterError(f"Bessel order must be non-negative, got {nu}")
    return special.jv(nu, x)


def bessel_jp(nu: float, x: ArrayLike) -> np.ndarray | float:
    if nu < 0:
        raise ParameterError(f"Bessel order must be non-negative, got {nu}")
    return special.jvp(nu, x)


def airy(x: ArrayLike) -> tuple[np.ndarray | float, np.ndarray | float]:
    """(Ai(x), Ai'(x)) on the validated range."""
    arr = np.asarray(x, dtype=float)
    lo, hi = AIRY_RANGE
    if np.any(arr < lo) or np.any(arr > hi):
        raise ParameterError(f"airy is validated on [{lo}, {hi}]")
    ai, aip, _, _ = special.airy(arr)
    return ai[()], aip[()]
