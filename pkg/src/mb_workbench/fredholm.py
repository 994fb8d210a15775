"""Fredholm determinants det(1 - K) on lattices, intervals and half-lines."""

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import BudgetExceededError, NumericalError, ParameterError
from .kernels import Domain, KernelFn

logger = logging.getLogger(__name__)

PROBABILITY_SLACK = 1e-8
SERIES_BUDGET = 2_000_000
_SERIES_CHUNK = 100_000


@dataclass(frozen=True)
class FredholmResult:
    value: float
    est_error: float
    nodes: int

    def probability(self) -> float:
        """The value clamped to [0, 1]; values further than 1e-8 outside raise."""
        if not -PROBABILITY_SLACK <= self.value <= 1 + PROBABILITY_SLACK:
            raise NumericalError(f"determinant {self.value} is not a probability")
        clamped = min(max(self.value, 0.0), 1.0)
        if clamped != self.value:
            logger.debug("clamped determinant %.3g to %.3g", self.value, clamped)
        return clamped


def _det_identity_minus(matrix: np.ndarray) -> float:
    sign, logdet = np.linalg.slogdet(np.eye(len(matrix)) - matrix)
    return float(sign * math.exp(logdet)) if sign else 0.0


def _require(kernel: KernelFn, domain: Domain) -> None:
    if kernel.domain is not domain:
        raise ParameterError(f"{kernel.name} acts on the {kernel.domain.value} domain, expected {domain.value}")


def fdet_discrete(kernel: KernelFn, l: int, T: int = 64, tol: float = 1e-12) -> FredholmResult:
    """det(1 - K) on l2{l + 1/2, ..., l + T - 1/2}, i.e. P(L <= l) for the matching point process."""
    return discrete_cdf(kernel, [l], T, tol)[0]


def discrete_cdf(kernel: KernelFn, levels: Sequence[int], T: int = 64, tol: float = 1e-12) -> list[FredholmResult]:
    """fdet_discrete at several levels from one kernel block."""
    _require(kernel, Domain.HALF_INTEGER)
    if T < 1:
        raise ParameterError("truncation T must be positive")
    levels = [int(l) for l in levels]
    if not levels:
        return []
    lo, hi = min(levels), max(levels)
    points = np.arange(lo, hi + T + 10) + 0.5
    block = kernel.matrix(points)
    results = []
    for l in levels:
        start = l - lo
        A = block[start : start + T, start : start + T]
        if abs(A[-1, -1]) >= tol:
            raise NumericalError(f"{kernel.name} has not decayed at the cut-off: |K(T, T)| = {abs(A[-1, -1]):.3g}")
        tail = float(np.abs(np.diag(block)[start + T : start + T + 10]).sum())
        results.append(FredholmResult(_det_identity_minus(A), tail, T))
    return results


def _nystrom(kernel: KernelFn, x: np.ndarray, w: np.ndarray) -> float:
    root = np.sqrt(w)
    return _det_identity_minus(root[:, None] * kernel.matrix(x) * root[None, :])


def _interval_rule(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = leggauss(n)
    return (b - a) / 2 * t + (a + b) / 2, (b - a) / 2 * w


def _halfline_rule(s: float, scale: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = leggauss(n)
    t = (t + 1) / 2
    return s - scale * np.log1p(-t), w / 2 * scale / (1 - t)


def _doubling(kernel: KernelFn, rule, n: int, tol: float, max_nodes: int) -> FredholmResult:
    if n < 8:
        raise ParameterError(f"at least 8 quadrature nodes are required, got {n}")
    previous = _nystrom(kernel, *rule(n))
    while 2 * n <= max_nodes:
        n *= 2
        current = _nystrom(kernel, *rule(n))
        change = abs(current - previous)
        logger.debug("%s Nystrom with %d nodes: %.17g (change %.3g)", kernel.name, n, current, change)
        if change < tol:
            return FredholmResult(current, change, n)
        previous = current
    raise NumericalError(f"{kernel.name} determinant not converged to {tol} within {max_nodes} nodes")


def fdet_interval(
    kernel: KernelFn, a: float, b: float, n: int = 16, tol: float = 1e-10, max_nodes: int = 1024
) -> FredholmResult:
    """Nystrom determinant on L2(a, b) at Gauss-Legendre nodes, doubling n until two levels agree."""
    _require(kernel, Domain.REAL)
    if not b > a:
        raise ParameterError(f"empty interval ({a}, {b})")
    return _doubling(kernel, lambda m: _interval_rule(a, b, m), n, tol, max_nodes)


def fdet_semiinfinite(
    kernel: KernelFn,
    s: float,
    map_scale: float = 1.0,
    n: int = 16,
    tol: float = 1e-10,
    max_nodes: int = 512,
    decay_probe: float = 25.0,
    decay_tol: float = 1e-8,
) -> FredholmResult:
    """Determinant on L2(s, inf) after the substitution x = s - map_scale log(1 - t)."""
    _require(kernel, Domain.REAL)
    if map_scale <= 0:
        raise ParameterError("map_scale must be positive")
    far = s + decay_probe * map_scale
    if abs(kernel(far, far)) > decay_tol:
        raise NumericalError(f"{kernel.name} does not decay along the diagonal: K({far}, {far}) = {kernel(far, far):.3g}")
    return _doubling(kernel, lambda m: _halfline_rule(s, map_scale, m), n, tol, max_nodes)


def fdet_series_oracle(
    kernel: KernelFn, domain: tuple[float, float], m_max: int = 3, n_quad: int = 20, map_scale: float = 1.0
) -> float:
    """Truncated series 1 + sum_m (-1)^m / m! int det[K(x_i, x_j)] with product Gauss-Legendre rules.

    ``domain`` is (a, b); b = inf uses the logarithmic half-line map.
    """
    _require(kernel, Domain.REAL)
    if m_max > 4 or m_max < 0:
        raise ParameterError(f"m_max must lie in [0, 4], got {m_max}")
    if n_quad**m_max > SERIES_BUDGET:
        raise BudgetExceededError(f"{n_quad}^{m_max} quadrature points exceed {SERIES_BUDGET}")
    a, b = domain
    x, w = _halfline_rule(a, map_scale, n_quad) if b == math.inf else _interval_rule(a, b, n_quad)
    K = kernel.matrix(x)
    total = 1.0
    for m in range(1, m_max + 1):
        term = 0.0
        tuples = itertools.product(range(n_quad), repeat=m)
        while chunk := list(itertools.islice(tuples, _SERIES_CHUNK)):
            idx = np.array(chunk)
            minors = K[idx[:, :, None], idx[:, None, :]]
            term += float(np.sum(np.linalg.det(minors) * np.prod(w[idx], axis=1)))
        total += (-1) ** m / math.factorial(m) * term
    return total
