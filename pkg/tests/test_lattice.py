import math
from fractions import Fraction

import pytest

from tropcrit.errors import DimensionMismatch, RankDeficient
from tropcrit.lattice import (
    IntMatrix,
    annihilator_basis,
    det,
    hnf,
    is_saturated,
    rational_rank,
    rref,
    smith_invariants,
    solve_rational,
    xgcd,
)


def column(*entries):
    return IntMatrix.from_rows([[x] for x in entries], 1)


def test_xgcd():
    for a, b in [(2, 1), (12, 18), (-4, 6), (0, 5), (7, 0)]:
        x, y, g = xgcd(a, b)
        assert g == math.gcd(a, b)
        assert x * a + y * b == g


def test_hnf_identity():
    H, U = hnf(IntMatrix.identity(2))
    assert H == IntMatrix.identity(2)
    assert U == IntMatrix.identity(2)


def test_hnf_is_reduced_and_unimodular():
    M = IntMatrix.from_rows([[2, 4], [1, 3]])
    H, U = hnf(M)
    # fully reduced: the entry above the pivot 2 lies in [0, 2)
    assert H.to_rows() == [[1, 1], [0, 2]]
    assert U @ M == H
    assert abs(det(U)) == 1


def test_hnf_zero_matrix():
    H, U = hnf(IntMatrix.zeros(2, 3))
    assert H.is_zero()
    assert U == IntMatrix.identity(2)


def test_hnf_rectangular():
    M = IntMatrix.from_rows([[3, 6, 1], [2, 4, 5], [1, 2, 3]])
    H, U = hnf(M)
    assert U @ M == H
    assert abs(det(U)) == 1
    assert H.rank() == 2
    assert not any(H.row(2))


def test_annihilator_of_diagonal_subtorus():
    A = annihilator_basis(column(1, 1))
    assert A.to_rows() == [[1, -1]]


def test_annihilator_of_coordinate_subtorus():
    assert annihilator_basis(column(0, 1)).to_rows() == [[1, 0]]


def test_annihilator_is_primitive():
    K = column(2, 4)
    A = annihilator_basis(K)
    assert A.to_rows() == [[2, -1]]
    assert math.gcd(*A.row(0)) == 1
    assert (A @ K).is_zero()


def test_annihilator_of_trivial_subtorus_is_everything():
    assert annihilator_basis(IntMatrix.zeros(3, 0)) == IntMatrix.identity(3)


def test_annihilator_rank_two_in_three_space():
    K = IntMatrix.from_rows([[1, 0], [2, 1], [3, 1]])
    A = annihilator_basis(K)
    assert A.rows == 1
    assert (A @ K).is_zero()
    assert is_saturated(A)


def test_annihilator_rank_deficient():
    with pytest.raises(RankDeficient):
        annihilator_basis(IntMatrix.from_rows([[1, 2], [2, 4]]))


def test_det():
    assert det(IntMatrix.from_rows([[1, 2], [3, 4]])) == -2
    assert det(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det(IntMatrix.from_rows([[2, 0, 1], [1, 3, 2], [1, 1, 2]])) == 6
    assert det(IntMatrix.from_rows([[1, 2], [2, 4]])) == 0
    with pytest.raises(DimensionMismatch):
        det(IntMatrix.zeros(2, 3))


def test_smith_invariants_and_saturation():
    assert smith_invariants(IntMatrix.from_rows([[2, 4], [6, 8]])) == [2, 4]
    assert is_saturated(IntMatrix.from_rows([[1, 2]]))
    assert not is_saturated(IntMatrix.from_rows([[2, 4]]))
    assert not is_saturated(IntMatrix.from_rows([[1, 0], [0, 2]]))


def test_ragged_rows_rejected():
    with pytest.raises(DimensionMismatch):
        IntMatrix.from_rows([[1, 2], [3]])


def test_rref_and_solve():
    rows, pivots = rref([[2, 4, 2], [1, 3, 2]])
    assert pivots == [0, 1]
    assert rows == [[1, 0, -1], [0, 1, 1]]
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert solve_rational([[1, 1], [1, -1]], [2, 0]) == [Fraction(1), Fraction(1)]
    assert solve_rational([[1, 1], [2, 2]], [1, 2]) is None
