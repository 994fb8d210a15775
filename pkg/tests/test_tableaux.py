import itertools

import numpy as np
import pytest

from mb_workbench.errors import ParameterError
from mb_workbench.fields import ModelParams, RandomSeed, sample_geom_field
from mb_workbench.lpp import L1_GEO, L2_GEO, lpp_oracle, lpp_value
from mb_workbench.tableaux import (
    Insertion,
    InterlacingSequence,
    Partition,
    PlanePartition,
    SlicePoints,
    burge_column_insert,
    corner_part,
    diagonal_slices,
    evacuation,
    from_slices,
    greene_check,
    greene_check_both,
    interlaces,
    restricted_shape,
    row_insertion,
    rsk_row_insert,
    slice_points,
    volumes,
)

PP = PlanePartition(np.array([[3, 2, 1], [2, 1, 0]]))


def _all_matrices(M: int, N: int, H: int):
    for flat in itertools.product(range(H + 1), repeat=M * N):
        yield np.array(flat, dtype=np.int64).reshape(M, N)


def _identities(W: np.ndarray, pp: PlanePartition) -> bool:
    left, central, right = volumes(pp)
    i = np.arange(1, W.shape[0] + 1)[:, None]
    j = np.arange(1, W.shape[1] + 1)[None, :]
    return (
        W.sum() == central
        and np.sum(W * (2 * i - 1)) == 2 * left + central
        and np.sum(W * (2 * j - 1)) == 2 * right + central
    )


class TestPartition:
    def test_trims_zeros(self):
        assert Partition((3, 1, 0, 0)).parts == (3, 1)
        assert Partition((2,))[5] == 0

    @pytest.mark.parametrize("parts", [(1, 2), (2, -1)])
    def test_rejects_invalid(self, parts):
        with pytest.raises(ParameterError):
            Partition(parts)

    def test_conjugate(self):
        assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
        assert Partition((4, 2, 2)).conjugate().conjugate() == Partition((4, 2, 2))

    def test_interlacing(self):
        assert interlaces(Partition((2, 1)), Partition((3, 1)))
        assert not interlaces(Partition((2, 2)), Partition((3, 1)))


class TestPlanePartition:
    def test_rejects_increasing_rows(self):
        with pytest.raises(ParameterError):
            PlanePartition(np.array([[1, 2]]))

    def test_read_only(self):
        with pytest.raises(ValueError):
            PP.entries[0, 0] = 9

    def test_hash_and_equality(self):
        other = PlanePartition(PP.entries.copy())
        assert other == PP
        assert len({other, PP}) == 1

    def test_volumes(self):
        assert volumes(PP) == (2, 4, 3)
        assert PP.corner == 3


class TestSlices:
    def test_round_trip(self):
        seq = diagonal_slices(PP)
        assert seq.is_interlacing()
        assert seq.slice(0) == Partition((3, 1))
        assert seq.slice(1) == Partition((2,))
        assert seq.slice(-1) == Partition((2,))
        assert from_slices(seq) == PP

    def test_boundary_slices_are_empty(self):
        seq = diagonal_slices(PP)
        assert seq.slice(-2) == Partition()
        assert seq.slice(3) == Partition()

    def test_wrong_slice_count(self):
        with pytest.raises(ParameterError):
            InterlacingSequence((Partition(),), 1, 1)

    def test_slice_points(self):
        assert slice_points(Partition((2, 1)), 3).l == (4, 2, 0)

    def test_slice_points_strict(self):
        with pytest.raises(ParameterError):
            SlicePoints((2, 2))

    @pytest.mark.parametrize("W", [np.array([[1, 0], [2, 1]]), np.array([[0, 3, 1], [1, 0, 2]])])
    def test_slices_of_insertion_interlace(self, W):
        assert diagonal_slices(rsk_row_insert(W)).is_interlacing()
        assert diagonal_slices(burge_column_insert(W)).is_interlacing()


class TestRowInsertion:
    def test_shapes_agree(self):
        P, Q = row_insertion([(1, 2), (1, 3), (2, 1), (2, 2), (3, 1)])
        assert [len(r) for r in P] == [len(r) for r in Q]
        assert P[0] == [1, 1]

    def test_restricted_shape(self):
        assert restricted_shape([[1, 2, 3], [2, 4]], 2) == Partition((2, 1))

    def test_evacuation_is_an_involution(self):
        T = [[1, 1, 2, 3], [2, 3], [4]]
        assert evacuation(evacuation(T, 4), 4) == T

    def test_evacuation_keeps_shape(self):
        T = [[1, 2, 2], [3, 4]]
        assert [len(r) for r in evacuation(T, 4)] == [3, 2]


class TestInsertions:
    @pytest.mark.parametrize("insertion", [rsk_row_insert, burge_column_insert])
    @pytest.mark.parametrize("M, N, H", [(1, 3, 2), (2, 2, 2), (2, 3, 1)])
    def test_weight_identities_and_injectivity(self, insertion, M, N, H):
        seen = set()
        count = 0
        for W in _all_matrices(M, N, H):
            pp = insertion(W)
            assert _identities(W, pp), W
            seen.add(pp)
            count += 1
        assert len(seen) == count

    @pytest.mark.parametrize("W", list(_all_matrices(2, 2, 2)))
    def test_greene_corners(self, W):
        assert rsk_row_insert(W).corner == lpp_oracle(W, L1_GEO)
        assert burge_column_insert(W).corner == lpp_oracle(W, L2_GEO)

    def test_greene_on_sampled_fields(self):
        p = ModelParams(a=0.9, q=0.8, M=5, N=6)
        for i in range(30):
            W = sample_geom_field(p, RandomSeed(9, i)).entries
            assert greene_check_both(W)

    def test_greene_check_detects_mismatch(self):
        W = np.array([[1, 0], [0, 1]])
        assert not greene_check(W, PlanePartition(np.array([[5, 0], [0, 0]])))

    def test_rejects_negative_weights(self):
        with pytest.raises(ParameterError):
            rsk_row_insert(np.array([[1, -1]]))

    def test_rejects_float_weights(self):
        with pytest.raises(ParameterError):
            rsk_row_insert(np.array([[0.5]]))


class TestCornerPart:
    @pytest.mark.parametrize("seed", range(25))
    def test_matches_full_insertion(self, seed):
        W = sample_geom_field(ModelParams(a=0.9, q=0.7, M=4, N=5), RandomSeed(seed)).entries
        assert corner_part(W, Insertion.RSK) == rsk_row_insert(W).corner
        assert corner_part(W, "burge") == burge_column_insert(W).corner

    def test_matches_passage_times(self):
        W = np.array([[1, 0, 2], [0, 3, 0]])
        assert corner_part(W, Insertion.RSK) == lpp_value(W, L1_GEO)
        assert corner_part(W, Insertion.BURGE) == lpp_value(W, L2_GEO)
