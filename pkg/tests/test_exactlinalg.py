from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conezeta.exactlinalg import (
    det,
    feasible_point,
    hermite_normal_form,
    int_inverse,
    inverse,
    mat_mul,
    nullspace,
    rank,
    row_hermite,
    saturate_and_complete,
    smith_normal_form,
    solve_rational,
)

small = st.integers(-6, 6)


def matrices(m, n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)


def test_det_examples():
    assert det([[2, 1], [1, 1]]) == 1
    assert det([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3
    assert det([[0, 1], [1, 0]]) == -1


def test_rank_and_nullspace():
    M = [[1, 2, 3], [2, 4, 6]]
    assert rank(M) == 1
    K = nullspace(M, 3)
    assert len(K) == 2
    for v in K:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in M)


def test_smith_form_of_small_matrix():
    M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    S, U, V = smith_normal_form(M)
    assert [S[i][i] for i in range(3)] == [2, 6, 12]
    assert mat_mul(mat_mul(U, M), V) == S


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4))
def test_smith_form_properties(M):
    S, U, V = smith_normal_form(M)
    assert mat_mul(mat_mul(U, M), V) == S
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [S[i][i] for i in range(3)]
    for i in range(3):
        for j in range(4):
            if i != j:
                assert S[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3))
def test_hermite_column_style(M):
    H, U = hermite_normal_form(M)
    assert mat_mul(M, U) == H
    assert abs(det(U)) == 1
    # lower triangular in the pivot columns
    for i in range(3):
        for j in range(i + 1, 3):
            if det(M) != 0:
                assert H[i][j] == 0


def test_row_hermite_reduction():
    H = row_hermite([[2, 3], [0, 5]])
    assert abs(det(H)) == 10
    assert H[1][0] == 0 and 0 <= H[0][1] < H[1][1]


def test_inverse_and_solve():
    M = [[2, 1], [1, 1]]
    assert int_inverse(M) == [[1, -1], [-1, 2]]
    assert inverse([[2, 0], [0, 4]]) == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
    x = solve_rational([[1, 0], [1, 2]], [3, 4])
    assert x[0] * 1 + x[1] * 1 == 3 and x[1] * 2 == 4
    assert solve_rational([[1, 1]], [1, 2]) is None


def test_saturation_of_non_saturated_span():
    B, A = saturate_and_complete([(2, 0, 0), (0, 2, 0)], 3)
    assert B.rank == 2
    assert abs(det(A)) == 1
    # (1,1,0) lies in the span and has integer coordinates
    Ai = int_inverse(A)
    y = [sum(v * Ai[i][j] for i, v in enumerate((1, 1, 0))) for j in range(3)]
    assert y[2] == 0


def test_feasibility():
    assert feasible_point([(1, 0), (0, 1)], [(1, 1)], n=2) is not None
    assert feasible_point([(1, 0), (-1, 0)], [(1, 0)], n=2) is None
    w = feasible_point([], [(1, -1), (-1, 2)], n=2)
    assert w[0] - w[1] > 0 and -w[0] + 2 * w[1] > 0


def test_singular_inverse_raises():
    with pytest.raises(Exception):
        inverse([[1, 2], [2, 4]])
