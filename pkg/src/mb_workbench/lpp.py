"""Last-passage times over monotone lattice paths.

Two orientations (down-left: (1,1) -> (M,N); down-right: (M,1) -> (1,N)) and two
combine rules (max-sum for geometric weights, min-product for power weights).
"""

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BudgetExceededError, ParameterError
from .fields import GeomField, PowField

ORACLE_MAX_SPAN = 18


class Orientation(str, Enum):
    DOWN_LEFT = "down-left"
    DOWN_RIGHT = "down-right"


class Combine(str, Enum):
    MAX_SUM = "max-sum"
    MIN_PRODUCT = "min-product"


@dataclass(frozen=True)
class PathMode:
    orientation: Orientation = Orientation.DOWN_LEFT
    combine: Combine = Combine.MAX_SUM

    def __post_init__(self):
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        object.__setattr__(self, "combine", Combine(self.combine))

    @classmethod
    def parse(cls, text: str) -> "PathMode":
        """Parse ``"<orientation>/<combine>"``, e.g. ``"down-right/max-sum"``."""
        try:
            orientation, combine = text.split("/")
            return cls(Orientation(orientation), Combine(combine))
        except ValueError as exc:
            raise ParameterError(f"invalid path mode {text!r}") from exc

    def __str__(self) -> str:
        return f"{self.orientation.value}/{self.combine.value}"


L1_GEO = PathMode(Orientation.DOWN_LEFT, Combine.MAX_SUM)
L2_GEO = PathMode(Orientation.DOWN_RIGHT, Combine.MAX_SUM)
L1_POW = PathMode(Orientation.DOWN_LEFT, Combine.MIN_PRODUCT)
L2_POW = PathMode(Orientation.DOWN_RIGHT, Combine.MIN_PRODUCT)


def _entries(field: GeomField | PowField | np.ndarray) -> np.ndarray:
    entries = field.entries if isinstance(field, GeomField | PowField) else np.asarray(field)
    if entries.ndim < 2 or entries.shape[-1] == 0 or entries.shape[-2] == 0:
        raise ParameterError("empty field")
    return entries


def _oriented(entries: np.ndarray, mode: PathMode) -> np.ndarray:
    if mode.orientation is Orientation.DOWN_RIGHT:
        return entries[..., ::-1, :]
    return entries


def _max_sum(w: np.ndarray) -> np.ndarray:
    """Down-left max-sum over the last two axes.

    Row i is a prefix scan: G_i[j] = C[j] + max_{k<=j}(G_{i-1}[k] - C[k-1]) with C the row's cumsum.
    """
    first = np.cumsum(w[..., 0, :], axis=-1)
    g = first
    for i in range(1, w.shape[-2]):
        row = w[..., i, :]
        c = np.cumsum(row, axis=-1)
        g = c + np.maximum.accumulate(g - (c - row), axis=-1)
    return g[..., -1]


def _log_weights(entries: np.ndarray) -> np.ndarray:
    if np.any(entries <= 0):
        raise ParameterError("min-product needs strictly positive weights")
    return -np.log(entries)


def lpp_values(fields: np.ndarray, mode: PathMode) -> np.ndarray:
    """Passage times of a stack of fields shaped (n, M, N).

    Min-product times below exp(-745) underflow to 0; ``lpp_log_values`` keeps them.
    """
    if mode.combine is Combine.MAX_SUM:
        return _max_sum(_oriented(_entries(fields), mode))
    return np.exp(lpp_log_values(fields, mode))


def lpp_log_values(fields: np.ndarray, mode: PathMode = L1_POW) -> np.ndarray:
    """Logarithm of min-product passage times, computed as -max sum of -log w."""
    if mode.combine is not Combine.MIN_PRODUCT:
        raise ParameterError("log passage times are defined for min-product modes")
    return -_max_sum(_log_weights(_oriented(_entries(fields), mode)))


def lpp_value(field: GeomField | PowField | np.ndarray, mode: PathMode = L1_GEO) -> int | float:
    entries = _entries(field)
    if entries.ndim != 2:
        raise ParameterError("lpp_value takes a single two-dimensional field")
    value = lpp_values(entries, mode)
    if mode.combine is Combine.MAX_SUM and np.issubdtype(entries.dtype, np.integer):
        return int(value)
    return float(value)


def _paths(rows: int, cols: int):
    steps = rows + cols - 2
    for downs in itertools.combinations(range(steps), rows - 1):
        i = j = 0
        cells = [(0, 0)]
        down_at = set(downs)
        for step in range(steps):
            if step in down_at:
                i += 1
            else:
                j += 1
            cells.append((i, j))
        yield cells


def lpp_oracle(field: GeomField | PowField | np.ndarray, mode: PathMode = L1_GEO) -> int | float:
    """Exhaustive optimum over every monotone path; products are taken directly, not in log space."""
    entries = _entries(field)
    rows, cols = entries.shape
    if rows + cols > ORACLE_MAX_SPAN:
        raise BudgetExceededError(f"path enumeration limited to M+N <= {ORACLE_MAX_SPAN}, got {rows + cols}")
    w = _oriented(entries, mode).tolist()
    if mode.combine is Combine.MAX_SUM:
        return max(sum(w[i][j] for i, j in cells) for cells in _paths(rows, cols))
    return min(math.prod(w[i][j] for i, j in cells) for cells in _paths(rows, cols))
