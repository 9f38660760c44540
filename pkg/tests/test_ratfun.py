from fractions import Fraction

import pytest

from conezeta.errors import NotInRingM, SpecializationCollapse
from conezeta.ratfun import (
    TermSum,
    TopRatFun,
    evaluate_numeric,
    make_term,
    normalize_fraction,
    power_series_coeffs,
    reduce_mod_qminus1,
    substitute_monomial_affine,
    univariate,
)


def geometric(a=0):
    # 1/(1 − q^a T)
    return TermSum(1, [make_term(1, 0, 0, (0,), [(a, (1,))])])


def test_series_of_geometric():
    assert power_series_coeffs(geometric(1), 3, 3) == [1, 3, 9, 27]


def test_normalize_merges_terms():
    # T/(1 − T) + 1 = 1/(1 − T)
    W = TermSum(1, [make_term(1, 0, 0, (1,), [(0, (1,))]), make_term(1, 0, 0, (0,), [])])
    F = normalize_fraction(W, 3)
    assert F.to_text() == "(1)/((1 - T))"
    assert F == normalize_fraction(geometric(0), 3)


def test_normalize_only_cancels_identical_binomials():
    # (1 − T^2)/((1 − T)(1 − T^2)): 1 − T divides out, 1 + T over 1 − T^2 stays
    W = TermSum(1, [make_term(1, 0, 0, (0,), [(0, (1,)), (0, (2,))]),
                    make_term(-1, 0, 0, (2,), [(0, (1,)), (0, (2,))])])
    F = normalize_fraction(W, 3)
    assert F == normalize_fraction(geometric(0), 3)
    assert F.to_text() == "(T + 1)/((1 - T^2))"


def test_symbolic_normal_form_text():
    W = TermSum(1, [make_term(2, 0, -1, (0,), [(-1, (1,))])])
    assert normalize_fraction(W).to_text() == "(2*q^-1)/((1 - q^-1*T))"


def test_affine_substitution_collapse():
    W = TermSum(1, [make_term(1, 0, 0, (0,), [(0, (1,))])])
    with pytest.raises(SpecializationCollapse):
        substitute_monomial_affine(W, [0], [[0]])


def test_reduction_mod_q_minus_one():
    # (q−1)/(1 − q^{-1} T) at T = q^{-s} reduces to 1/(s + 1)
    W = TermSum(1, [make_term(1, 1, 0, (0,), [(-1, (1,))])])
    assert reduce_mod_qminus1(W) == univariate([1], [((1, 1), 1)])
    bad = TermSum(1, [make_term(1, 0, 0, (0,), [(-1, (1,))])])
    with pytest.raises(NotInRingM):
        reduce_mod_qminus1(bad)


def test_top_ratfun_arithmetic():
    a = univariate([1], [((1, 0), 1)])
    b = univariate([1], [((1, -1), 1)])
    diff = b - a  # 1/(s−1) − 1/s = 1/(s(s−1))
    assert diff == univariate([1], [((1, 0), 1), ((1, -1), 1)])
    assert diff.evaluate([Fraction(2)]) == Fraction(1, 2)
    assert (a - a).is_zero()
    assert TopRatFun.from_json(diff.to_json()) == diff


def test_rendering():
    F = univariate([Fraction(-1, 2), Fraction(3, 2)], [((2, -1), 1), ((1, -1), 2), ((1, 0), 1)])
    assert F.to_text() == "(3s - 1)/(2(2s - 1)(s - 1)^2 s)"


def test_numeric_evaluation_agrees_with_normal_form():
    W = geometric(1) + geometric(0) * 2
    q, t = Fraction(5), Fraction(1, 7)
    assert evaluate_numeric(W, q, [t]) == normalize_fraction(W, 5).evaluate([t])
