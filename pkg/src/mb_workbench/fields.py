"""Model parameters and the random weight fields driving both last-passage models."""

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError, ParameterError

logger = logging.getLogger(__name__)

DEFAULT_TV_TOL = 1e-9
_UINT64 = 2**64


def _check_extent(name: str, value: float) -> None:
    if value == math.inf:
        return
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ParameterError(f"{name} must be a positive integer or infinity, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """The parameter tuple (a, q, eta, theta, alpha, M, N) shared by every module.

    ``M`` and ``N`` are positive integers or ``math.inf``. The derived quantities
    ``Q = q**eta`` and ``Qt = q**theta`` are exposed as properties.
    """

    a: float
    q: float
    eta: float = 1.0
    theta: float = 1.0
    alpha: float = 0.0
    M: float = math.inf
    N: float = math.inf

    def __post_init__(self):
        if not 0.0 <= self.a <= 1.0:
            raise ParameterError(f"a must lie in [0, 1], got {self.a}")
        if not 0.0 <= self.q <= 1.0:
            raise ParameterError(f"q must lie in [0, 1], got {self.q}")
        if self.a == 1.0 and self.q == 1.0:
            raise ParameterError("a and q cannot both equal 1")
        if self.eta < 0 or self.theta < 0 or self.alpha < 0:
            raise ParameterError("eta, theta and alpha must be non-negative")
        _check_extent("M", self.M)
        _check_extent("N", self.N)
        if self.is_finite and self.M > self.N:
            raise ParameterError(f"M <= N is required when both are finite, got M={self.M}, N={self.N}")
        if self.M != math.inf:
            object.__setattr__(self, "M", int(self.M))
        if self.N != math.inf:
            object.__setattr__(self, "N", int(self.N))

    @property
    def Q(self) -> float:
        return self.q**self.eta

    @property
    def Qt(self) -> float:
        return self.q**self.theta

    @property
    def is_finite(self) -> bool:
        return self.M != math.inf and self.N != math.inf

    def check_power_model(self) -> "ModelParams":
        """The power model needs alpha, eta and theta not all zero; the geometric model does not."""
        if self.alpha == 0 and self.eta == 0 and self.theta == 0:
            raise ParameterError("the power model needs alpha, eta and theta not all zero")
        return self

    def replace(self, **changes) -> "ModelParams":
        values = {name: getattr(self, name) for name in ("a", "q", "eta", "theta", "alpha", "M", "N")}
        values.update(changes)
        return ModelParams(**values)

    def as_dict(self) -> dict[str, float | str]:
        out: dict[str, float | str] = {}
        for name in ("a", "q", "eta", "theta", "alpha", "M", "N"):
            value = getattr(self, name)
            out[name] = "inf" if value == math.inf else value
        return out


@dataclass(frozen=True)
class RandomSeed:
    """A (seed, stream) key; identical keys yield identical draws."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        for name in ("seed", "stream"):
            value = getattr(self, name)
            if not 0 <= value < _UINT64:
                raise ParameterError(f"{name} must be a 64-bit unsigned integer, got {value}")

    def generator(self) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.Philox(sequence))


@dataclass(frozen=True)
class GeomField:
    entries: np.ndarray
    bbox: tuple[int, int]
    tv_tol: float
    tail_bound: float = 0.0

    def value(self, i: int, j: int) -> int:
        """Entry at 1-based site (i, j); sites outside the box are zero."""
        rows, cols = self.entries.shape
        if i < 1 or j < 1:
            raise ParameterError("sites are 1-based")
        if i > rows or j > cols:
            return 0
        return int(self.entries[i - 1, j - 1])


@dataclass(frozen=True)
class PowField:
    entries: np.ndarray
    params: ModelParams = field(repr=False, compare=False, default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.params is not None:
            self.params.check_power_model()

    def value(self, i: int, j: int) -> float:
        return float(self.entries[i - 1, j - 1])


def geom_param(i: int, j: int, p: ModelParams) -> float:
    if i < 1 or j < 1:
        raise ParameterError("sites are 1-based")
    u = p.a * p.Q ** (i - 0.5) * p.Qt ** (j - 0.5)
    if u >= 1.0:
        raise ParameterError(f"geometric parameter at ({i}, {j}) is {u} >= 1")
    return u


def geom_params(p: ModelParams, rows: int, cols: int) -> np.ndarray:
    i = np.arange(1, rows + 1, dtype=float)[:, None]
    j = np.arange(1, cols + 1, dtype=float)[None, :]
    u = p.a * p.Q ** (i - 0.5) * p.Qt ** (j - 0.5)
    if np.any(u >= 1.0):
        raise ParameterError("a geometric parameter reaches 1 (a = q = 1 is excluded)")
    return u


def pow_param(i: int, j: int, p: ModelParams) -> float:
    if i < 1 or j < 1:
        raise ParameterError("sites are 1-based")
    p.check_power_model()
    return p.alpha + p.eta * (i - 0.5) + p.theta * (j - 0.5)


def pow_params(p: ModelParams, rows: int, cols: int) -> np.ndarray:
    p.check_power_model()
    i = np.arange(1, rows + 1, dtype=float)[:, None]
    j = np.arange(1, cols + 1, dtype=float)[None, :]
    return p.alpha + p.eta * (i - 0.5) + p.theta * (j - 0.5)


def _line_sum(u: float, n: float) -> float:
    """sum_{k=1}^{n} u^(k - 1/2), n possibly infinite."""
    if n == math.inf:
        if u >= 1.0:
            return math.inf
        return math.sqrt(u) / (1.0 - u)
    if u == 1.0:
        return float(n)
    return math.sqrt(u) * (1.0 - u**n) / (1.0 - u)


def _cutoff(u: float, scale: float, budget: float) -> int:
    """Smallest B >= 1 with scale * u^(B + 1/2) / (1 - u) < budget."""
    if scale == 0.0 or u == 0.0:
        return 1
    b = math.ceil(math.log(budget * (1.0 - u) / scale) / math.log(u) - 0.5)
    b = max(b, 1)
    while scale * u ** (b + 0.5) / (1.0 - u) >= budget:
        b += 1
    return b


def truncation_box(p: ModelParams, tv_tol: float = DEFAULT_TV_TOL) -> tuple[tuple[int, int], float]:
    """Rectangle [1, B1] x [1, B2] whose complement carries a first moment below tv_tol.

    Returns the box and the bound on the discarded sum of geometric parameters.
    """
    if tv_tol <= 0:
        raise ParameterError(f"tv_tol must be positive, got {tv_tol}")
    Q, Qt = p.Q, p.Qt
    if p.a == 0.0:
        return (1 if p.M == math.inf else int(p.M), 1 if p.N == math.inf else int(p.N)), 0.0
    if (p.M == math.inf and Q >= 1.0) or (p.N == math.inf and Qt >= 1.0):
        raise NumericalError("non-convergent tail: the geometric parameters do not decay in an infinite direction")
    row_sum = _line_sum(Qt, p.N)
    col_sum = _line_sum(Q, p.M)
    tail = 0.0
    if p.M == math.inf:
        rows = _cutoff(Q, p.a * row_sum, tv_tol / 2)
        tail += p.a * row_sum * Q ** (rows + 0.5) / (1.0 - Q)
    else:
        rows = int(p.M)
    if p.N == math.inf:
        cols = _cutoff(Qt, p.a * col_sum, tv_tol / 2)
        tail += p.a * col_sum * Qt ** (cols + 0.5) / (1.0 - Qt)
    else:
        cols = int(p.N)
    logger.debug("truncation box %dx%d, discarded first moment %.3g", rows, cols, tail)
    return (rows, cols), tail


def _site_uniforms(gen: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Uniforms in (0, 1] keyed by the Cantor index of each site, independent of the box."""
    i = np.arange(rows)[:, None]
    j = np.arange(cols)[None, :]
    d = i + j
    index = d * (d + 1) // 2 + j
    draws = gen.random(int(index.max()) + 1)
    w = 1.0 - draws[index]
    return np.where(w >= 1.0, np.nextafter(1.0, 0.0), w)


def _geometric_from_uniforms(w: np.ndarray, u: np.ndarray) -> np.ndarray:
    out = np.zeros(u.shape, dtype=np.int64)
    live = u > 0
    out[live] = np.floor(np.log(w[live]) / np.log(u[live])).astype(np.int64)
    return out


def sample_geom_field(p: ModelParams, seed: RandomSeed, tv_tol: float = DEFAULT_TV_TOL) -> GeomField:
    (rows, cols), tail = truncation_box(p, tv_tol)
    u = geom_params(p, rows, cols)
    w = _site_uniforms(seed.generator(), rows, cols)
    return GeomField(entries=_geometric_from_uniforms(w, u), bbox=(rows, cols), tv_tol=tv_tol, tail_bound=tail)


def sample_pow_field(p: ModelParams, seed: RandomSeed) -> PowField:
    if not p.is_finite:
        raise ParameterError("power fields need finite M and N")
    rows, cols = int(p.M), int(p.N)
    beta = pow_params(p, rows, cols)
    w = _site_uniforms(seed.generator(), rows, cols)
    return PowField(entries=w ** (1.0 / beta), params=p)


def coupled_params(p: ModelParams, eps: float) -> ModelParams:
    """Geometric parameters a = exp(-alpha eps), q = exp(-eps) approximating the power model."""
    if eps <= 0:
        raise ParameterError("eps must be positive")
    return p.replace(a=math.exp(-p.alpha * eps), q=math.exp(-eps))


def sample_coupled_fields(p: ModelParams, eps: float, seed: RandomSeed) -> tuple[GeomField, PowField]:
    """Geometric and power fields on M x N driven by the same uniforms.

    The geometric parameter exp(-eps * beta_ij) makes exp(-eps * omega_geo) -> omega_pow as eps -> 0.
    """
    if not p.is_finite:
        raise ParameterError("coupled fields need finite M and N")
    geo = coupled_params(p, eps)
    rows, cols = int(p.M), int(p.N)
    w = _site_uniforms(seed.generator(), rows, cols)
    beta = pow_params(p, rows, cols)
    geom = GeomField(
        entries=_geometric_from_uniforms(w, geom_params(geo, rows, cols)), bbox=(rows, cols), tv_tol=0.0
    )
    return geom, PowField(entries=w ** (1.0 / beta), params=p)


def field_to_csv_rows(entries: np.ndarray) -> Iterator[tuple[int, int, float]]:
    rows, cols = entries.shape
    for i in range(rows):
        for j in range(cols):
            yield i + 1, j + 1, entries[i, j].item()
