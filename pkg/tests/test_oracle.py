import pytest
from hypothesis import given, settings, strategies as st

from conezeta.algebra import CATALOG, zero_algebra
from conezeta.errors import TooLarge
from conezeta.laurent import LaurentPolynomial as L
from conezeta.oracle import (
    all_sublattices_series,
    check_igusa_identity,
    congruence_counts,
    cone_lattice_points,
    cone_partial_sum,
    hermite_form_count,
    hermite_forms,
    level_counts,
    sublattice_counts,
)
from conezeta.polyhedra import HalfOpenCone, orthant
from conezeta.ratfun import TermSum, make_term


@pytest.mark.parametrize("d,p,k", [(1, 3, 3), (2, 3, 3), (3, 2, 3), (2, 5, 2)])
def test_hermite_counts_match_product_of_zetas(d, p, k):
    forms = list(hermite_forms(d, p, k))
    assert len(forms) == hermite_form_count(d, p, k) == all_sublattices_series(d, p, k)[k]


def test_empty_family_counts_everything():
    for d in (1, 2, 3):
        t = sublattice_counts(zero_algebra(d), 3, 3)
        assert t.counts == all_sublattices_series(d, 3, 3)


def test_small_subalgebra_counts():
    assert sublattice_counts(CATALOG["heisenberg"](), 3, 2).counts == [1, 4, 49]
    assert sublattice_counts(CATALOG["mat2"](), 3, 3).counts == [1, 0, 1, 0]


def test_guard():
    with pytest.raises(TooLarge):
        sublattice_counts(zero_algebra(5), 7, 6)
    with pytest.raises(TooLarge):
        congruence_counts(L.variable(4, 0), 13, 5)


def test_congruence_counts():
    x = L.variable(1, 0)
    assert congruence_counts(x, 3, 3).counts == [1, 1, 1, 1]
    X, Y = L.variable(2, 0), L.variable(2, 1)
    assert congruence_counts(X * Y, 3, 1).counts == [1, 5]
    # x² + y² ≡ 0 mod p: p ≡ 1 mod 4 gives 2p − 1 solutions
    assert congruence_counts(X * X + Y * Y, 5, 1).counts == [1, 9]
    assert congruence_counts(X * X + Y * Y, 3, 1).counts == [1, 1]


def test_igusa_identity_for_a_line():
    x = L.variable(1, 0)
    Z = TermSum(1, [make_term(1, 0, 0, (0,), [(-1, (1,))]), make_term(-1, 0, -1, (0,), [(-1, (1,))])])
    ok, table, pred = check_igusa_identity(x, Z, 5, 3)
    assert ok


def test_cone_points():
    Q = orthant(2)
    assert level_counts(Q, 4) == [1, 2, 3, 4, 5]
    C = HalfOpenCone(2, ((1, 0),), ((0, 1),))
    assert sorted(cone_lattice_points(C, 2)) == [(0, 1), (0, 2), (1, 1)]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 5))
def test_partial_sum_of_orthant(B):
    # Σ_{a+b ≤ B} x^a y^b at x = y = 1 counts the points
    A = [[1, 0], [0, 1]]
    assert cone_partial_sum(orthant(2), A, B, (1, 1)) == (B + 1) * (B + 2) // 2
