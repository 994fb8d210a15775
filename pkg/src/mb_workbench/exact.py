"""Exact small-instance evaluation of the plane-partition measure and its Schur rewrites.

All weights are mpmath numbers computed at ``DPS`` decimal digits; callers convert with
``float`` when a double is enough.
"""

import itertools
import logging
import math
from collections import defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from mpmath import mp

from .errors import BudgetExceededError, ParameterError
from .fields import ModelParams, truncation_box
from .tableaux import Partition, PlanePartition, SlicePoints, diagonal_slices, volumes

logger = logging.getLogger(__name__)

DPS = 40
ENUMERATION_BUDGET = 10**7
ORACLE_MAX_SIZE = 8
ORACLE_MAX_VARS = 4


@dataclass(frozen=True)
class MeasureWeight:
    value: mp.mpf
    components: tuple[int, int, int]

    def __float__(self) -> float:
        return float(self.value)


def macmahon_count(M: int, N: int, H: int) -> int:
    """Number of M x N plane partitions with entries <= H."""
    num = math.prod(i + j + k - 1 for i in range(1, M + 1) for j in range(1, N + 1) for k in range(1, H + 1))
    den = math.prod(i + j + k - 2 for i in range(1, M + 1) for j in range(1, N + 1) for k in range(1, H + 1))
    return num // den


def enumerate_pp(M: int, N: int, H: int, budget: int = ENUMERATION_BUDGET) -> Iterator[PlanePartition]:
    """Every M x N plane partition with parts <= H, filled column by column."""
    if min(M, N) < 1 or H < 0:
        raise ParameterError(f"enumeration needs M, N >= 1 and H >= 0, got ({M}, {N}, {H})")
    count = macmahon_count(M, N, H)
    if count > budget:
        raise BudgetExceededError(f"{count} plane partitions in the {M}x{N}x{H} box exceed the budget {budget}")
    logger.debug("enumerating %d plane partitions in the %dx%dx%d box", count, M, N, H)
    cells = [(i, j) for j in range(N) for i in range(M)]
    grid = [[0] * N for _ in range(M)]

    def fill(pos: int) -> Iterator[PlanePartition]:
        if pos == len(cells):
            yield PlanePartition(grid)
            return
        i, j = cells[pos]
        bound = H
        if i:
            bound = min(bound, grid[i - 1][j])
        if j:
            bound = min(bound, grid[i][j - 1])
        for v in range(bound + 1):
            grid[i][j] = v
            yield from fill(pos + 1)
        grid[i][j] = 0

    yield from fill(0)


def _mp_params(p: ModelParams) -> tuple[mp.mpf, mp.mpf, mp.mpf]:
    Q = mp.mpf(p.q) ** mp.mpf(p.eta)
    Qt = mp.mpf(p.q) ** mp.mpf(p.theta)
    return mp.mpf(p.a), Q, Qt


def pp_weight(pp: PlanePartition, p: ModelParams) -> MeasureWeight:
    """Unnormalised weight Q^left (a sqrt(Q Qt))^central Qt^right."""
    left, central, right = volumes(pp)
    with mp.workdps(DPS):
        a, Q, Qt = _mp_params(p)
        value = Q**left * (a * mp.sqrt(Q * Qt)) ** central * Qt**right
    return MeasureWeight(value, (left, central, right))


def partition_fn(p: ModelParams, tol: float = 1e-15) -> mp.mpf:
    """Z = prod (1 - a Q^(i-1/2) Qt^(j-1/2))^-1, truncated for infinite M, N with log-error below ~tol."""
    with mp.workdps(DPS):
        a, Q, Qt = _mp_params(p)
        (rows, cols), tail = truncation_box(p, tol)
        log_z = mp.mpf(0)
        u_max = mp.mpf(0)
        for i in range(1, rows + 1):
            for j in range(1, cols + 1):
                u = a * Q ** (i - mp.mpf(0.5)) * Qt ** (j - mp.mpf(0.5))
                log_z -= mp.log1p(-u)
                u_max = max(u_max, u)
        if tail:
            # -log(1 - u) <= u / (1 - u)
            logger.debug("partition function log-tail bound %.3g", float(tail / (1 - u_max)))
        return mp.exp(log_z)


def schur_principal(lam: Partition, u: float, n: int) -> mp.mpf:
    """s_lam(1, u, ..., u^(n-1)) by the principal-specialisation product."""
    if n < 0:
        raise ParameterError(f"number of variables must be non-negative, got {n}")
    if len(lam) > n:
        return mp.mpf(0)
    if u < 0:
        raise ParameterError(f"principal specialisation needs u >= 0, got {u}")
    parts = lam.padded(n)
    with mp.workdps(DPS):
        if u == 0:
            return mp.mpf(1 if len(lam) <= 1 else 0)
        u = mp.mpf(u)
        value = mp.mpf(1)
        for i, j in itertools.combinations(range(n), 2):
            gap = j - i
            shifted = parts[i] - parts[j] + gap
            if u == 1:
                value *= mp.mpf(shifted) / gap
            else:
                value *= u ** parts[j] * (1 - u**shifted) / (1 - u**gap)
        return value


def _ssyt(lam: Partition, letters: int) -> Iterator[list[list[int]]]:
    rows = [[0] * part for part in lam.parts]
    cells = [(r, c) for r, part in enumerate(lam.parts) for c in range(part)]

    def fill(pos: int) -> Iterator[list[list[int]]]:
        if pos == len(cells):
            yield rows
            return
        r, c = cells[pos]
        low = 1
        if c:
            low = max(low, rows[r][c - 1])
        if r:
            low = max(low, rows[r - 1][c] + 1)
        for v in range(low, letters + 1):
            rows[r][c] = v
            yield from fill(pos + 1)

    yield from fill(0)


def schur_combinatorial_oracle(lam: Partition, variables: Sequence[float]) -> mp.mpf:
    """Sum over semistandard tableaux of shape lam of the monomial in ``variables``."""
    if lam.size > ORACLE_MAX_SIZE or len(variables) > ORACLE_MAX_VARS:
        raise BudgetExceededError(
            f"tableau enumeration limited to |lambda| <= {ORACLE_MAX_SIZE} and {ORACLE_MAX_VARS} variables"
        )
    with mp.workdps(DPS):
        xs = [mp.mpf(x) for x in variables]
        total = mp.mpf(0)
        for tableau in _ssyt(lam, len(xs)):
            total += mp.fprod(xs[v - 1] for row in tableau for v in row)
        return total


def _require_finite(p: ModelParams) -> tuple[int, int]:
    if not p.is_finite:
        raise ParameterError("finite M and N are required")
    return int(p.M), int(p.N)


def schur_measure_weight(lam: Partition, p: ModelParams) -> mp.mpf:
    M, N = _require_finite(p)
    if len(lam) > M:
        return mp.mpf(0)
    with mp.workdps(DPS):
        a, Q, Qt = _mp_params(p)
        prefactor = (a * mp.sqrt(Q * Qt)) ** lam.size
        return prefactor * schur_principal(lam, Q, M) * schur_principal(lam, Qt, N)


def mb_slice_weight(points: SlicePoints | Sequence[int], p: ModelParams) -> mp.mpf:
    """Discrete two-interaction weight of the central-slice point configuration."""
    M, N = _require_finite(p)
    l = tuple(points.l if isinstance(points, SlicePoints) else points)
    if len(l) != M:
        raise ParameterError(f"expected {M} slice points, got {len(l)}")
    if any(l[i] <= l[i + 1] for i in range(M - 1)) or min(l) < 0:
        return mp.mpf(0)
    with mp.workdps(DPS):
        a, Q, Qt = _mp_params(p)
        value = mp.mpf(1)
        for i, j in itertools.combinations(range(M), 2):
            value *= (Q ** l[j] - Q ** l[i]) * (Qt ** l[j] - Qt ** l[i])
        base = a * mp.sqrt(Q * Qt)
        for li in l:
            value *= base**li * mp.fprod(1 - Qt ** (li + 1 + k) for k in range(N - M))
        return value


def partitions_in_box(rows: int, H: int) -> Iterator[Partition]:
    """Partitions with at most ``rows`` parts, each at most H."""
    for parts in itertools.combinations_with_replacement(range(H, -1, -1), rows):
        yield Partition(parts)


def pushforward_weights(p: ModelParams, H: int) -> dict[Partition, mp.mpf]:
    """Sum of pp_weight over plane partitions grouped by their central slice, all slices with lambda_1 <= H."""
    M, N = _require_finite(p)
    totals: dict[Partition, mp.mpf] = defaultdict(lambda: mp.mpf(0))
    with mp.workdps(DPS):
        for pp in enumerate_pp(M, N, H):
            totals[diagonal_slices(pp).slice(0)] += pp_weight(pp, p).value
    return dict(totals)


def central_slice_distribution(p: ModelParams, H: int) -> list[tuple[Partition, float]]:
    """Schur-measure law of the central slice, normalised over lambda_1 <= H."""
    M, _ = _require_finite(p)
    with mp.workdps(DPS):
        weights = [(lam, schur_measure_weight(lam, p)) for lam in partitions_in_box(M, H)]
        total = mp.fsum(w for _, w in weights)
        return [(lam, float(w / total)) for lam, w in weights]


def weight_table(p: ModelParams, H: int) -> Iterator[tuple[str, int, int, int, str]]:
    """Audit rows (plane partition, left, central, right, weight) for every Lambda in the box."""
    M, N = _require_finite(p)
    for pp in enumerate_pp(M, N, H):
        w = pp_weight(pp, p)
        key = ";".join(",".join(str(v) for v in row) for row in pp.entries.tolist())
        yield key, *w.components, mp.nstr(w.value, 20)
