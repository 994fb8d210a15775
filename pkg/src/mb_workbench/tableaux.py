"""Partitions, plane partitions, diagonal slices and the two insertion bijections."""

import bisect
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParameterError
from .lpp import L1_GEO, L2_GEO, PathMode, lpp_value

Tableau = list[list[int]]


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in parts):
            raise ParameterError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ParameterError(f"parts must be weakly decreasing, got {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        """0-based part access, zero past the length."""
        return self.parts[i] if i < len(self.parts) else 0

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for x in self.parts if x > c) for c in range(self.parts[0])))

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self.parts) > n:
            raise ParameterError(f"partition {self.parts} has more than {n} parts")
        return self.parts + (0,) * (n - len(self.parts))


def interlaces(mu: Partition, lam: Partition) -> bool:
    """True when mu < lam in the interlacing order: lam_i >= mu_i >= lam_{i+1}."""
    n = max(len(mu), len(lam)) + 1
    return all(lam[i] >= mu[i] >= lam[i + 1] for i in range(n))


@dataclass(frozen=True)
class PlanePartition:
    """Non-negative integer matrix, weakly decreasing along rows and columns; largest part at (1, 1)."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.int64)
        if entries.ndim != 2:
            raise ParameterError("a plane partition is a matrix")
        if entries.size and entries.min() < 0:
            raise ParameterError("plane partition entries must be non-negative")
        if np.any(np.diff(entries, axis=0) > 0) or np.any(np.diff(entries, axis=1) > 0):
            raise ParameterError("plane partition entries must decrease along rows and columns")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def corner(self) -> int:
        return int(self.entries[0, 0]) if self.entries.size else 0

    def key(self) -> tuple[int, ...]:
        return tuple(self.entries.ravel().tolist())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlanePartition) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.shape, self.key()))


@dataclass(frozen=True)
class InterlacingSequence:
    """Slices lambda^(-M), ..., lambda^(N); ``slices[k + M]`` holds lambda^(k)."""

    slices: tuple[Partition, ...]
    M: int
    N: int

    def __post_init__(self):
        if len(self.slices) != self.M + self.N + 1:
            raise ParameterError("an M x N base carries M + N + 1 slices")

    def slice(self, k: int) -> Partition:
        return self.slices[k + self.M]

    def is_interlacing(self) -> bool:
        for k in range(-self.M, self.N):
            left, right = self.slice(k), self.slice(k + 1)
            if k < 0 and not interlaces(left, right):
                return False
            if k >= 0 and not interlaces(right, left):
                return False
        return True


@dataclass(frozen=True)
class SlicePoints:
    l: tuple[int, ...]

    def __post_init__(self):
        if any(self.l[i] <= self.l[i + 1] for i in range(len(self.l) - 1)) or (self.l and self.l[-1] < 0):
            raise ParameterError(f"slice points must be strictly decreasing and non-negative, got {self.l}")


def slice_points(lam: Partition, M: int) -> SlicePoints:
    return SlicePoints(tuple(x + M - i for i, x in enumerate(lam.padded(M), start=1)))


def diagonal_slices(pp: PlanePartition) -> InterlacingSequence:
    M, N = pp.shape
    e = pp.entries
    slices = []
    for k in range(-M, N + 1):
        if k >= 0:
            parts = [e[i, i + k] for i in range(min(M, N - k))]
        else:
            parts = [e[i - k, i] for i in range(min(N, M + k))]
        slices.append(Partition(tuple(parts)))
    return InterlacingSequence(tuple(slices), M, N)


def from_slices(seq: InterlacingSequence) -> PlanePartition:
    entries = np.zeros((seq.M, seq.N), dtype=np.int64)
    for i in range(seq.M):
        for j in range(seq.N):
            entries[i, j] = seq.slice(j - i)[min(i, j)]
    return PlanePartition(entries)


def volumes(pp: PlanePartition) -> tuple[int, int, int]:
    """(left, central, right) cube counts relative to the main diagonal."""
    e = pp.entries
    return int(np.tril(e, -1).sum()), int(np.trace(e)), int(np.triu(e, 1).sum())


class Insertion(str, Enum):
    RSK = "rsk"
    BURGE = "burge"


def _biword(W: np.ndarray, reverse_columns: bool) -> list[tuple[int, int]]:
    """Lexicographically sorted pairs (i', j') with multiplicity, i' = M + 1 - i."""
    M, N = W.shape
    pairs = []
    for i in range(M, 0, -1):
        top = M + 1 - i
        row = [(N + 1 - j if reverse_columns else j, int(W[i - 1, j - 1])) for j in range(1, N + 1)]
        for bottom, count in sorted(row):
            pairs.extend([(top, bottom)] * count)
    return pairs


def _row_insert(P: Tableau, x: int) -> int:
    """Row-insert x into P in place; returns the row where the new box appears."""
    for r, row in enumerate(P):
        pos = bisect.bisect_right(row, x)
        if pos == len(row):
            row.append(x)
            return r
        row[pos], x = x, row[pos]
    P.append([x])
    return len(P) - 1


def row_insertion(pairs: Iterable[tuple[int, int]]) -> tuple[Tableau, Tableau]:
    """Insertion and recording tableaux of a two-line array."""
    P: Tableau = []
    Q: Tableau = []
    for top, bottom in pairs:
        r = _row_insert(P, bottom)
        if r == len(Q):
            Q.append([])
        Q[r].append(top)
    return P, Q


def evacuation(T: Tableau, alphabet: int) -> Tableau:
    """Schutzenberger evacuation over the letters 1..alphabet."""
    word = [alphabet + 1 - v for row in T for v in reversed(row)]
    P: Tableau = []
    for x in word:
        _row_insert(P, x)
    return P


def restricted_shape(T: Tableau, bound: int) -> Partition:
    return Partition(tuple(bisect.bisect_right(row, bound) for row in T))


def _plane_partition(P: Tableau, Q: Tableau, M: int, N: int) -> PlanePartition:
    slices = [restricted_shape(Q, M - k) for k in range(M, 0, -1)]
    slices += [restricted_shape(P, N - k) for k in range(N + 1)]
    return from_slices(InterlacingSequence(tuple(slices), M, N))


def _weights(W: np.ndarray | Sequence[Sequence[int]]) -> np.ndarray:
    W = np.asarray(W)
    if W.ndim != 2 or W.size == 0:
        raise ParameterError("weight matrix must be a non-empty matrix")
    if not np.issubdtype(W.dtype, np.integer) or W.min() < 0:
        raise ParameterError("weight matrix must hold non-negative integers")
    return W


def rsk_row_insert(W: np.ndarray | Sequence[Sequence[int]]) -> PlanePartition:
    """Plane partition whose corner is the down-left max-sum passage time of W."""
    W = _weights(W)
    M, N = W.shape
    P, Q = row_insertion(_biword(W, reverse_columns=True))
    return _plane_partition(P, Q, M, N)


def burge_column_insert(W: np.ndarray | Sequence[Sequence[int]]) -> PlanePartition:
    """Plane partition whose corner is the down-right max-sum passage time of W.

    Column labels are kept in their natural order, so insertion chains follow down-right
    paths; evacuating the insertion tableau puts the slice for columns >= k+1 at lambda^(k).
    """
    W = _weights(W)
    M, N = W.shape
    P, Q = row_insertion(_biword(W, reverse_columns=False))
    return _plane_partition(evacuation(P, N), Q, M, N)


def _first_row_length(W: np.ndarray, reverse_columns: bool) -> int:
    M, N = W.shape
    row: list[int] = []
    for i in range(M, 0, -1):
        cols = range(N, 0, -1) if reverse_columns else range(1, N + 1)
        for j in cols:
            count = int(W[i - 1, j - 1])
            if not count:
                continue
            x = N + 1 - j if reverse_columns else j
            pos = bisect.bisect_right(row, x)
            # each copy bumps the next entry greater than x
            row[pos : pos + count] = [x] * count
    return len(row)


def corner_part(W: np.ndarray, insertion: Insertion | str = Insertion.RSK) -> int:
    """Lambda_{1,1} of the chosen insertion, tracking only the first row of the insertion tableau."""
    W = _weights(W)
    return _first_row_length(W, reverse_columns=Insertion(insertion) is Insertion.RSK)


def greene_check(W: np.ndarray, pp: PlanePartition, mode: PathMode | None = None) -> bool:
    """Corner of ``pp`` equals the matching last-passage time of W (down-left for RSK, down-right for Burge)."""
    return pp.corner == lpp_value(np.asarray(W), mode or L1_GEO)


def greene_check_both(W: np.ndarray) -> bool:
    return greene_check(W, rsk_row_insert(W), L1_GEO) and greene_check(W, burge_column_insert(W), L2_GEO)
