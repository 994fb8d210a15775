"""Correlation kernels: discrete K_d, hard-edge K_he, Bessel, finite-size K_c and Airy.

Every kernel is available as a scalar function and as a ``KernelFn`` whose ``matrix``
method evaluates a whole block at once, which is what the Fredholm engines consume.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum

import numpy as np
from mpmath import mp
from numpy.polynomial.legendre import leggauss
from scipy import special

from .errors import BudgetExceededError, NumericalError, ParameterError
from .fields import ModelParams
from .specfun import airy, bessel_j, bessel_jp, qpoch_finite, qpoch_inf

logger = logging.getLogger(__name__)

PANEL_NODES = 16
SERIES_MAX_TERMS = 8192
# series terms above e^23 lose more than ten digits to cancellation
SERIES_CANCELLATION_LIMIT = 23.0
IMAG_TOL = 1e-10
CAUCHY_BLOCK = 512
KC_SELF_TOL = 1e-10


class ContourKind(str, Enum):
    CIRCLE = "circle"
    VERTICAL_LINE = "vertical-line"
    WEDGE = "wedge"


@dataclass(frozen=True)
class ContourSpec:
    """A quadrature contour.

    Circles are sampled with the trapezoid rule at ``nodes`` points. Vertical lines and
    wedges are two rays leaving ``abscissa`` at angle +-``angle`` from the direction in
    which the contour is closed; a vertical line is the wedge with ``angle = pi/2``.
    Each ray is cut at ``half_height`` and integrated with Gauss-Legendre panels. A positive
    ``vertex_panel`` caps the panel width near the vertex, where poles sit close to the rays.
    """

    kind: ContourKind = ContourKind.WEDGE
    radius: float = 1.0
    abscissa: float = 0.0
    half_height: float = 20.0
    nodes: int = 320
    angle: float = math.pi / 3
    vertex_panel: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ContourKind(self.kind))
        if self.nodes < 16 or self.nodes % 2:
            raise ParameterError(f"contour node count must be even and >= 16, got {self.nodes}")
        if self.kind is ContourKind.CIRCLE and self.radius <= 0:
            raise ParameterError(f"circle radius must be positive, got {self.radius}")
        if self.kind is not ContourKind.CIRCLE and self.half_height <= 0:
            raise ParameterError("half_height must be positive")
        if self.vertex_panel < 0:
            raise ParameterError("vertex_panel must be non-negative")
        if self.kind is ContourKind.VERTICAL_LINE:
            object.__setattr__(self, "angle", math.pi / 2)


class Domain(str, Enum):
    HALF_INTEGER = "half-integer"
    REAL = "real"


@dataclass(frozen=True)
class KernelFn:
    matrix_fn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    domain: Domain
    name: str = "kernel"

    def matrix(self, xs: np.ndarray, ys: np.ndarray | None = None) -> np.ndarray:
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ys = xs if ys is None else np.atleast_1d(np.asarray(ys, dtype=float))
        if self.domain is Domain.HALF_INTEGER:
            _check_half_integers(xs)
            _check_half_integers(ys)
        return self.matrix_fn(xs, ys)

    def __call__(self, x: float, y: float) -> float:
        return float(self.matrix([x], [y])[0, 0])


def _check_half_integers(values: np.ndarray) -> None:
    doubled = 2 * np.asarray(values, dtype=float)
    if np.any(doubled != np.round(doubled)) or np.any(np.round(doubled) % 2 != 1):
        raise ParameterError("discrete kernel arguments must lie in Z + 1/2")


def _real_part(values: np.ndarray, what: str) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    if values.size and float(np.max(np.abs(values.imag))) > IMAG_TOL * scale:
        raise NumericalError(f"{what}: imaginary residue {np.max(np.abs(values.imag)):.3g} above tolerance")
    return values.real


# discrete kernel


def _kd_singularities(p: ModelParams) -> tuple[float, float]:
    """(x0, y0): F_d has poles at |z| = 1 / (x0 Q^i) and zeros at |z| = y0 Qt^i."""
    s = math.sqrt(p.a)
    return s * math.sqrt(p.Q), s * math.sqrt(p.Qt)


def kd_contours(p: ModelParams) -> tuple[ContourSpec, ContourSpec]:
    """z- and w-circles at the geometric midpoints of the analyticity annulus."""
    x0, y0 = _kd_singularities(p)
    r_z = 1.0 / math.sqrt(x0) if x0 > 0 else 2.0
    r_w = math.sqrt(y0) if y0 > 0 else 0.5
    gaps = [math.log(r_z / r_w)]
    if x0 > 0:
        gaps.append(-math.log(x0 * r_z))
    if y0 > 0:
        gaps.append(math.log(r_w / y0))
    gap = min(gaps)
    if gap <= 0:
        raise NumericalError("no annulus separates the singularities of F_d")
    # trapezoid error decays like exp(-gap * n); aim below 1e-16
    nodes = 1 << max(6, math.ceil(math.log2(37.0 / gap)))
    nodes = min(nodes, 8192)
    return ContourSpec(ContourKind.CIRCLE, radius=r_z, nodes=nodes), ContourSpec(
        ContourKind.CIRCLE, radius=r_w, nodes=nodes
    )


def _pochhammer(x: np.ndarray, u: float, n: float) -> np.ndarray:
    if n == math.inf:
        if u >= 1.0:
            raise ParameterError("an infinite extent needs Q, Qt < 1")
        return np.asarray(qpoch_inf(x, u))
    return np.asarray(qpoch_finite(x, u, int(n)))


def kd_function(z: np.ndarray, p: ModelParams) -> np.ndarray:
    """F_d(z) = (y0 / z; Qt)_N / (x0 z; Q)_M."""
    x0, y0 = _kd_singularities(p)
    return _pochhammer(y0 / z, p.Qt, p.N) / _pochhammer(x0 * z, p.Q, p.M)


def kd_matrix(
    ks: np.ndarray, ls: np.ndarray, p: ModelParams, contours: tuple[ContourSpec, ContourSpec] | None = None
) -> np.ndarray:
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    ls = np.atleast_1d(np.asarray(ls, dtype=float))
    _check_half_integers(ks)
    _check_half_integers(ls)
    if p.a == 0.0:
        return ((ks[:, None] == ls[None, :]) & (ks[:, None] < 0)).astype(float)
    z_spec, w_spec = contours or kd_contours(p)
    x0, y0 = _kd_singularities(p)
    if not (y0 < w_spec.radius < z_spec.radius and (x0 == 0 or z_spec.radius * x0 < 1.0)):
        raise NumericalError("K_d contours pass through a singularity or are not nested |w| < |z|")
    nz, nw = z_spec.nodes, w_spec.nodes
    z = z_spec.radius * np.exp(2j * np.pi * (np.arange(nz) + 0.5) / nz)
    w = w_spec.radius * np.exp(2j * np.pi * (np.arange(nw) + 0.5) / nw)
    # half-integer powers combine with sqrt(zw) and the measure into integer powers
    z_exp = np.rint(0.5 - ks).astype(int)
    w_exp = np.rint(ls + 0.5).astype(int)
    rows = kd_function(z, p)[None, :] * z[None, :] ** z_exp[:, None]
    cols = w[None, :] ** w_exp[:, None] / kd_function(w, p)[None, :]
    cauchy = 1.0 / (z[:, None] - w[None, :])
    values = rows @ cauchy @ cols.T / (nz * nw)
    return _real_part(values, "K_d quadrature")


def kd_eval(k: float, l: float, p: ModelParams, contours: tuple[ContourSpec, ContourSpec] | None = None) -> float:
    return float(kd_matrix([k], [l], p, contours)[0, 0])


def kd_kernel(p: ModelParams, contours: tuple[ContourSpec, ContourSpec] | None = None) -> KernelFn:
    chosen = contours or (kd_contours(p) if p.a > 0 else None)
    return KernelFn(lambda ks, ls: kd_matrix(ks, ls, p, chosen), Domain.HALF_INTEGER, "K_d")


def _qbinom(n: float, k: int, u):
    if k < 0:
        return mp.mpf(0)
    if n == math.inf:
        if u == 1:
            raise ParameterError("an infinite extent needs Q, Qt < 1")
        return 1 / mp.fprod(1 - u**i for i in range(1, k + 1))
    n = int(n)
    if k > n:
        return mp.mpf(0)
    if u == 1:
        return mp.binomial(n, k)
    return mp.fprod((1 - u ** (n - i)) / (1 - u ** (i + 1)) for i in range(k))


def _qmulti(n: float, k: int, u):
    """Coefficient of x^k in 1 / (x; u)_n."""
    if n == math.inf:
        return _qbinom(n, k, u)
    return _qbinom(int(n) + k - 1, k, u)


def kd_oracle(k: float, l: float, p: ModelParams, tol: float = 1e-30, max_terms: int = 4000) -> float:
    """K_d(k, l) as the coefficient of z^k / w^l, by multiplying truncated Laurent series.

    F_d(z) = sum_n f_n z^n and 1 / F_d(w) = sum_n g_n w^-n, and
    K_d(k, l) = sum_{m >= 0} f_{k+m+1/2} g_{l+m+1/2}.
    """
    _check_half_integers(np.array([k, l]))
    if p.a == 0.0:
        return float(k == l and k < 0)
    ki, li = round(k - 0.5), round(l - 0.5)
    with mp.workdps(40):
        s = mp.sqrt(mp.mpf(p.a))
        Q, Qt = mp.mpf(p.q) ** p.eta, mp.mpf(p.q) ** p.theta
        x0, y0 = s * mp.sqrt(Q), s * mp.sqrt(Qt)
        rho = max(x0, y0)
        if rho == 0:
            return float(k == l and k < 0)
        terms = int(mp.ceil(mp.log(tol) / mp.log(rho))) + abs(ki) + abs(li) + 10
        if terms > max_terms:
            raise BudgetExceededError(f"K_d series needs {terms} terms, budget {max_terms}")
        num = [(-1) ** j * Qt ** (j * (j - 1) // 2) * y0**j * _qbinom(p.N, j, Qt) for j in range(terms + 1)]
        den = [x0**n * _qmulti(p.M, n, Q) for n in range(2 * terms + 1)]
        poly = [(-1) ** n * Q ** (n * (n - 1) // 2) * x0**n * _qbinom(p.M, n, Q) for n in range(terms + 1)]
        inv = [y0**n * _qmulti(p.N, n, Qt) for n in range(2 * terms + 1)]

        def f(n: int):
            return mp.fsum(den[n + j] * num[j] for j in range(max(0, -n), terms + 1) if n + j <= 2 * terms)

        def g(n: int):
            return mp.fsum(poly[j] * inv[n + j] for j in range(max(0, -n), terms + 1) if n + j <= 2 * terms)

        parts = [f(ki + m + 1) * g(li + m + 1) for m in range(terms)]
        logger.debug("K_d series: %d terms, last term %s", terms, mp.nstr(abs(parts[-1]), 3))
        return float(mp.fsum(parts))


# hard edge


def _series_side(logx: np.ndarray, alpha: float, own: float, other: float, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Signed factors (-1)^i x^e_i / (i! Gamma(g_i)) for one side of the hard-edge series, and its poles."""
    n = 32
    while True:
        i = np.arange(n, dtype=float)
        poles = alpha / 2 + own * (i + 0.5)
        exponents = (alpha - 1) / 2 + own * (i + 0.5)
        gamma_args = alpha / other + (i + 0.5) * own / other + 0.5
        logs = exponents[None, :] * logx[:, None] - special.gammaln(i + 1)[None, :] - special.gammaln(gamma_args)[None, :]
        peak = logs.max(axis=1)
        settled = np.all(logs[:, -1] < peak + math.log(tol) - 2) and np.all(logs.argmax(axis=1) < n - 1)
        if settled:
            break
        n *= 2
        if n > SERIES_MAX_TERMS:
            raise BudgetExceededError(f"hard-edge series did not settle within {SERIES_MAX_TERMS} terms")
    if peak.max() > SERIES_CANCELLATION_LIMIT:
        raise NumericalError(f"hard-edge series too large at these arguments (peak term e^{peak.max():.1f})")
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return signs[None, :] * np.exp(logs), poles


def _khe_from_logs(
    logx: np.ndarray, logy: np.ndarray, alpha: float, eta: float, theta: float, tol: float
) -> np.ndarray:
    if min(eta, theta) <= 0:
        raise ParameterError("the hard-edge kernel needs eta, theta > 0")
    if alpha < 0:
        raise ParameterError("alpha must be non-negative")
    u, zeta = _series_side(logx, alpha, eta, theta, tol)
    v, omega = _series_side(logy, alpha, theta, eta, tol)
    cauchy = 1.0 / (zeta[:, None] + omega[None, :])
    return eta * theta * (u @ cauchy @ v.T)


def khe_series_matrix(
    xs: np.ndarray, ys: np.ndarray, alpha: float, eta: float, theta: float, tol: float = 1e-16
) -> np.ndarray:
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ParameterError("K_he is defined for x, y > 0")
    return _khe_from_logs(np.log(xs), np.log(ys), alpha, eta, theta, tol)


def khe_series(x: float, y: float, alpha: float, eta: float, theta: float, tol: float = 1e-16) -> float:
    """Hard-edge kernel from its double power series (the primary evaluator)."""
    return float(khe_series_matrix(np.array([x]), np.array([y]), alpha, eta, theta, tol)[0, 0])


def khe_tilde_matrix(xs: np.ndarray, ys: np.ndarray, alpha: float, eta: float, theta: float) -> np.ndarray:
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if eta == theta == 1.0:
        inner = bessel_kernel_matrix(np.exp(-xs), np.exp(-ys), alpha)
    else:
        inner = _khe_from_logs(-xs, -ys, alpha, eta, theta, 1e-16)
    return np.exp(-xs / 2)[:, None] * inner * np.exp(-ys / 2)[None, :]


def khe_tilde(x: float, y: float, alpha: float, eta: float, theta: float) -> float:
    """exp(-x/2 - y/2) K_he(exp(-x), exp(-y)); the Bessel closed form is used when eta = theta = 1."""
    return float(khe_tilde_matrix(np.array([x]), np.array([y]), alpha, eta, theta)[0, 0])


def khe_tilde_kernel(alpha: float, eta: float = 1.0, theta: float = 1.0) -> KernelFn:
    return KernelFn(lambda xs, ys: khe_tilde_matrix(xs, ys, alpha, eta, theta), Domain.REAL, "K~_he")


def khe_kernel(alpha: float, eta: float = 1.0, theta: float = 1.0) -> KernelFn:
    return KernelFn(lambda xs, ys: khe_series_matrix(xs, ys, alpha, eta, theta), Domain.REAL, "K_he")


# contour quadrature shared by K_he, K_c and the Airy kernel


def _ray_rule(length: float, nodes: int, vertex_panel: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    panels = max(1, math.ceil(nodes / PANEL_NODES))
    t, w = leggauss(PANEL_NODES)
    edges = np.linspace(0.0, length, panels + 1)
    if vertex_panel > 0:
        span = min(length, 2.0 + 4 * vertex_panel)
        fine = np.linspace(0.0, span, math.ceil(span / vertex_panel) + 1)
        edges = np.concatenate([fine, edges[edges > span]])
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    return (mid[:, None] + half[:, None] * t[None, :]).ravel(), (half[:, None] * w[None, :]).ravel()


def wedge_rule(spec: ContourSpec, opening: str) -> tuple[np.ndarray, np.ndarray]:
    """Points and complex weights (dz included) of a wedge traversed upwards.

    ``opening="right"`` closes towards +infinity, ``"left"`` towards -infinity.
    """
    t, w = _ray_rule(spec.half_height, spec.nodes, spec.vertex_panel)
    beta = spec.angle if opening == "right" else math.pi - spec.angle
    up = np.exp(1j * beta)
    down = np.exp(-1j * beta)
    points = np.concatenate([spec.abscissa + t[::-1] * down, spec.abscissa + t * up])
    weights = np.concatenate([-w[::-1] * down, w * up])
    return points, weights


def _check_tail(rows: np.ndarray, what: str, tol: float = 1e-13) -> None:
    mags = np.abs(rows)
    scale = mags.max()
    if scale and max(mags[:, 0].max(), mags[:, -1].max()) > tol * scale:
        raise NumericalError(f"{what}: integrand has not decayed at the contour cut-off")


def _double_contour(
    zeta: tuple[np.ndarray, np.ndarray],
    omega: tuple[np.ndarray, np.ndarray],
    row_fn: Callable[[np.ndarray], np.ndarray],
    col_fn: Callable[[np.ndarray], np.ndarray],
    what: str,
) -> np.ndarray:
    """sum over nodes of row(zeta) col(omega) / (zeta - omega), divided by (2 pi i)^2."""
    z, wz = zeta
    o, wo = omega
    rows = row_fn(z) * wz[None, :]
    cols = col_fn(o) * wo[None, :]
    _check_tail(rows, what)
    _check_tail(cols, what)
    values = np.zeros((rows.shape[0], cols.shape[0]), dtype=complex)
    for start in range(0, z.size, CAUCHY_BLOCK):
        block = slice(start, start + CAUCHY_BLOCK)
        values += rows[:, block] @ (1.0 / (z[block, None] - o[None, :])) @ cols.T
    values /= (2j * math.pi) ** 2
    return _real_part(values, what)


def _log_f_he(zeta: np.ndarray, alpha: float, eta: float, theta: float) -> np.ndarray:
    return special.loggamma(alpha / (2 * eta) - zeta / eta + 0.5) - special.loggamma(
        alpha / (2 * theta) + zeta / theta + 0.5
    )


def _hard_edge_delta(alpha: float, eta: float, theta: float) -> float:
    return min(alpha / 2 + eta / 2, alpha / 2 + theta / 2) / 2


def khe_integral(
    x: float, y: float, alpha: float, eta: float, theta: float, contour: ContourSpec | None = None
) -> float:
    """Hard-edge kernel by quadrature of its double contour integral, for x, y in (0, 1)."""
    if not (0 < x < 1 and 0 < y < 1):
        raise ParameterError("the contour route is used for x, y in (0, 1)")
    delta = _hard_edge_delta(alpha, eta, theta)
    spec = contour or ContourSpec(ContourKind.WEDGE, abscissa=delta, half_height=20.0, nodes=320)
    if not 0 < spec.abscissa < alpha / 2 + min(eta, theta) / 2:
        raise NumericalError("contour abscissa must separate the Gamma poles")
    lx, ly = math.log(x), math.log(y)
    zeta = wedge_rule(spec, "right")
    mirrored = ContourSpec(
        spec.kind, abscissa=-spec.abscissa, half_height=spec.half_height, nodes=spec.nodes, angle=spec.angle
    )
    omega = wedge_rule(mirrored, "left")
    value = _double_contour(
        zeta,
        omega,
        lambda z: np.exp(_log_f_he(z, alpha, eta, theta) + z * lx)[None, :],
        lambda o: np.exp(-_log_f_he(o, alpha, eta, theta) - o * ly)[None, :],
        "K_he contour",
    )
    return float(value[0, 0]) / math.sqrt(x * y)


# Bessel kernel


def _bessel_integral(xs: np.ndarray, ys: np.ndarray, alpha: float) -> np.ndarray:
    """int_0^1 J(2 sqrt(u x)) J(2 sqrt(u y)) du by Gauss-Jacobi with weight u^alpha.

    The integrand is u^alpha times an entire function of u, so the rule is exact up to the
    oscillation, which the node count follows.
    """
    top = math.sqrt(max(float(np.max(xs)), float(np.max(ys)), 0.0))
    n = 48 + 6 * math.ceil(top)
    t, w = special.roots_jacobi(n, 0.0, alpha)
    u, w = (t + 1) / 2, w / 2 ** (alpha + 1)
    jx = special.jv(alpha, 2 * np.sqrt(np.outer(xs, u))) / u[None, :] ** (alpha / 2)
    jy = special.jv(alpha, 2 * np.sqrt(np.outer(ys, u))) / u[None, :] ** (alpha / 2)
    return (jx * w[None, :]) @ jy.T


def bessel_kernel_diagonal(xs: np.ndarray, alpha: float) -> np.ndarray:
    """K(x, x) = J_a(z)^2 - J_(a+1)(z) J_(a-1)(z) at z = 2 sqrt(x), with J_(a-1) from the recurrence."""
    z = 2 * np.sqrt(np.asarray(xs, dtype=float))
    j, j1 = bessel_j(alpha, z), bessel_j(alpha + 1, z)
    return j**2 - 2 * alpha / z * j * j1 + j1**2


def bessel_kernel_matrix(xs: np.ndarray, ys: np.ndarray, alpha: float, switch: float = 1e-6) -> np.ndarray:
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ParameterError("the Bessel kernel is defined for x, y > 0")
    sx, sy = np.sqrt(xs), np.sqrt(ys)
    jx, jpx = bessel_j(alpha, 2 * sx), bessel_jp(alpha, 2 * sx)
    jy, jpy = bessel_j(alpha, 2 * sy), bessel_jp(alpha, 2 * sy)
    diff = xs[:, None] - ys[None, :]
    near = np.abs(diff) < switch
    with np.errstate(divide="ignore", invalid="ignore"):
        closed = (np.outer(jx, sy * jpy) - np.outer(sx * jpx, jy)) / diff
    if near.any():
        # symmetric kernel: the midpoint diagonal value is second-order accurate
        mid = ((xs[:, None] + ys[None, :]) / 2)[near]
        closed[near] = bessel_kernel_diagonal(mid, alpha)
    return closed


def bessel_kernel(x: float, y: float, alpha: float) -> float:
    """Hard-edge Bessel kernel int_0^1 J_a(2 sqrt(ux)) J_a(2 sqrt(uy)) du, closed form off the diagonal."""
    return float(bessel_kernel_matrix(np.array([x]), np.array([y]), alpha)[0, 0])


def bessel_kernel_integral(x: float, y: float, alpha: float) -> float:
    return float(_bessel_integral(np.array([x]), np.array([y]), alpha)[0, 0])


def bessel_kernel_tw(x: float, y: float, alpha: float) -> float:
    """The Bessel kernel in the J(sqrt x) normalisation; equals bessel_kernel(x/4, y/4) / 4."""
    return bessel_kernel(x / 4, y / 4, alpha) / 4


def bessel_kernel_fn(alpha: float) -> KernelFn:
    return KernelFn(lambda xs, ys: bessel_kernel_matrix(xs, ys, alpha), Domain.REAL, "K_Bessel")


# finite-size kernel


def _check_unit_interval(values: np.ndarray) -> None:
    if np.any(values <= 0) or np.any(values >= 1):
        raise ParameterError("K_c is defined for x, y in (0, 1)")


def _kc_side(logx: np.ndarray, alpha: float, own: float, other: float, own_n: int, other_n: int):
    """Residue factors of one side of K_c and the residue locations."""
    m = np.arange(own_n, dtype=float)
    poles = alpha / 2 + own * (m + 0.5)
    shift = (alpha + own * (m + 0.5) + other / 2) / other
    log_coef = (
        math.log(own)
        + special.gammaln(shift + other_n)
        - special.gammaln(shift)
        - special.gammaln(m + 1)
        - special.gammaln(own_n - m)
    )
    signs = np.where(np.arange(own_n) % 2 == 0, 1.0, -1.0)
    return signs[None, :] * np.exp(log_coef[None, :] + (poles - 0.5)[None, :] * logx[:, None]), poles


def kc_matrix(xs: np.ndarray, ys: np.ndarray, alpha: float, eta: float, theta: float, M: int, N: int) -> np.ndarray:
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    _check_unit_interval(xs)
    _check_unit_interval(ys)
    if not 1 <= M <= N:
        raise ParameterError(f"K_c needs 1 <= M <= N, got M={M}, N={N}")
    if min(eta, theta) <= 0:
        raise ParameterError("K_c needs eta, theta > 0")
    u, zeta = _kc_side(np.log(xs), alpha, eta, theta, M, N)
    v, omega = _kc_side(np.log(ys), alpha, theta, eta, N, M)
    return u @ (1.0 / (zeta[:, None] + omega[None, :])) @ v.T


def kc_eval(x: float, y: float, alpha: float, eta: float, theta: float, M: int, N: int) -> float:
    """Finite-size kernel as the finite M x N residue sum."""
    return float(kc_matrix(np.array([x]), np.array([y]), alpha, eta, theta, M, N)[0, 0])


def kc_kernel(alpha: float, eta: float, theta: float, M: int, N: int) -> KernelFn:
    return KernelFn(lambda xs, ys: kc_matrix(xs, ys, alpha, eta, theta, M, N), Domain.REAL, "K_c")


def _log_poch(c: np.ndarray, n: int) -> np.ndarray:
    return special.loggamma(c + n) - special.loggamma(c)


def _kc_contour(
    x: float, y: float, alpha: float, eta: float, theta: float, M: int, N: int, shape: ContourSpec
) -> float:
    left = ContourSpec(
        shape.kind,
        abscissa=-shape.abscissa,
        half_height=shape.half_height,
        nodes=shape.nodes,
        angle=shape.angle,
        vertex_panel=shape.vertex_panel,
    )

    def log_f(z: np.ndarray) -> np.ndarray:
        return _log_poch(alpha / (2 * theta) + z / theta + 0.5, N) - _log_poch(alpha / (2 * eta) - z / eta + 0.5, M)

    lx, ly = math.log(x), math.log(y)
    value = _double_contour(
        wedge_rule(shape, "right"),
        wedge_rule(left, "left"),
        lambda z: np.exp(log_f(z) + z * lx)[None, :],
        lambda o: np.exp(-log_f(o) - o * ly)[None, :],
        "K_c contour",
    )
    return float(value[0, 0]) / math.sqrt(x * y)


def kc_quadrature(
    x: float, y: float, alpha: float, eta: float, theta: float, M: int, N: int, angle: float = math.pi / 4
) -> float:
    """K_c from its double contour integral with Pochhammer ratios; independent of the residue sum.

    The rays are cut where the integrand is below e^-40 of its size, the panels next to the vertex
    are no wider than the distance from the ray to the nearest pole, and the value is accepted only
    when a run with twice the nodes agrees to ``KC_SELF_TOL``.
    """
    _check_unit_interval(np.array([x, y]))
    delta = _hard_edge_delta(alpha, eta, theta)
    first_pole = min(alpha / 2 + eta / 2, alpha / 2 + theta / 2)
    rate = math.cos(angle) * min(-math.log(x), -math.log(y))
    growth = abs(N - M) + 2
    length = 40.0 / rate
    for _ in range(3):
        length = (40.0 + growth * math.log1p(length)) / rate
    if length > 4000:
        raise NumericalError("K_c contour too long for arguments this close to 1")
    nodes = PANEL_NODES * max(4, math.ceil(length / 2))
    panel = min(1.0, (first_pole - delta) * math.sin(angle))
    coarse = ContourSpec(
        ContourKind.WEDGE, abscissa=delta, half_height=length, nodes=nodes, angle=angle, vertex_panel=panel
    )
    fine = ContourSpec(
        ContourKind.WEDGE, abscissa=delta, half_height=length, nodes=2 * nodes, angle=angle, vertex_panel=panel / 2
    )
    rough = _kc_contour(x, y, alpha, eta, theta, M, N, coarse)
    value = _kc_contour(x, y, alpha, eta, theta, M, N, fine)
    if abs(value - rough) > KC_SELF_TOL * max(1.0, abs(value)):
        raise NumericalError(f"K_c contour quadrature not converged: doubling moved it by {abs(value - rough):.3g}")
    logger.debug("K_c contour at (%g, %g): %d nodes per ray, change on doubling %.3g", x, y, 2 * nodes, value - rough)
    return value


# Airy kernel


def airy_kernel_matrix(xs: np.ndarray, ys: np.ndarray, switch: float = 1e-7) -> np.ndarray:
    xs, ys = np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)
    ax, apx = airy(xs)
    ay, apy = airy(ys)
    diff = xs[:, None] - ys[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (np.outer(ax, apy) - np.outer(apx, ay)) / diff
    near = np.abs(diff) < switch
    if near.any():
        # symmetric kernel: the midpoint diagonal value is second-order accurate
        mid = ((xs[:, None] + ys[None, :]) / 2)[near]
        am, apm = airy(mid)
        out[near] = apm**2 - mid * am**2
    return out


def airy_kernel(x: float, y: float) -> float:
    return float(airy_kernel_matrix(np.array([x]), np.array([y]))[0, 0])


def airy_kernel_fn() -> KernelFn:
    return KernelFn(airy_kernel_matrix, Domain.REAL, "Airy")


def airy_kernel_contour(x: float, y: float, half_height: float = 8.0, nodes: int = 256) -> float:
    """Airy kernel from exp(zeta^3/3 - x zeta) / exp(omega^3/3 - y omega) / (zeta - omega)."""
    right = ContourSpec(ContourKind.WEDGE, abscissa=math.sqrt(max(x, 0.25)), half_height=half_height, nodes=nodes)
    left = ContourSpec(ContourKind.WEDGE, abscissa=-math.sqrt(max(y, 0.25)), half_height=half_height, nodes=nodes)
    value = _double_contour(
        wedge_rule(right, "right"),
        wedge_rule(left, "left"),
        lambda z: np.exp(z**3 / 3 - x * z)[None, :],
        lambda o: np.exp(-(o**3) / 3 + y * o)[None, :],
        "Airy contour",
    )
    return float(value[0, 0])
