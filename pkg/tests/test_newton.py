from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conezeta.laurent import LaurentPolynomial as L
from conezeta.newton import (
    GF,
    PolyFamily,
    face_initials,
    is_degenerate_point,
    newton_polytope,
    nondegeneracy_check,
    primitive_polynomial,
    torus_count,
    visible_newton_faces,
)
from conezeta.polyhedra import face_lattice, minkowski_sum, orthant

X = [L.variable(6, i) for i in range(6)]


def sl2_terms():
    x11, x12, x13, x22, x23, x33 = X
    a = x11 * x22 * x33 ** -1
    b = x13 * x23 * x33 ** -1 * 4
    c = x12 * x22 ** -1 * x23 ** 2 * x33 ** -1 * -4
    return a, b, c


def poly(n, terms):
    return L(n, {tuple(e): c for e, c in terms})


small_polys = st.lists(st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                                 st.integers(-3, 3).filter(bool)), min_size=1, max_size=4)


def test_newton_of_affine_linear():
    f = poly(2, [((1, 0), 1), ((0, 1), 1), ((0, 0), 1)])
    assert sorted(newton_polytope(f).vertices) == [(0, 0), (0, 1), (1, 0)]
    assert newton_polytope(X[0] * X[1]).dim == 0


@settings(max_examples=30, deadline=None)
@given(small_polys, small_polys)
def test_newton_of_product_is_minkowski_sum(a, b):
    f, g = poly(2, a), poly(2, b)
    if not f or not g:
        return
    P, _ = minkowski_sum([newton_polytope(f), newton_polytope(g)])
    assert sorted(P.vertices) == sorted(newton_polytope(f * g).vertices)


@settings(max_examples=30, deadline=None)
@given(small_polys, st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_initial_form_support_is_the_face(a, w):
    f = poly(2, a)
    if not f:
        return
    P = newton_polytope(f)
    face = {P.vertices[i] for i in P.min_face(w)}
    assert set(newton_polytope(f.initial_form(w)).vertices) == face


def test_initial_forms_examples():
    x, y = L.variable(2, 0), L.variable(2, 1)
    f = x * x + y * y
    assert f.initial_form((1, 0)) == y * y
    assert f.initial_form((0, 0)) == f


def test_sl2_initial_forms_on_faces():
    a, b, c = sl2_terms()
    f = a + b + c
    fam = PolyFamily([[f]], 6)
    inits = {h for face in visible_newton_faces(fam, orthant(6)) for h in face_initials(fam, face)}
    assert a in inits and a + b in inits and f in inits


def test_torus_counts():
    a, b, c = sl2_terms()
    for q in (3, 5, 7):
        assert torus_count([a + b], [], q, 6) == (q - 1) ** 5
        assert torus_count([a + b + c], [], q, 6) == (q - 1) ** 4 * (q - 2)
        assert torus_count([], [], q, 6) == (q - 1) ** 6
    assert torus_count([a + b + c], [], 9, 6) == 8 ** 4 * 7


@pytest.mark.parametrize("q", [3, 4, 5])
def test_split_agrees_with_brute_force(q):
    x, y, z = (L.variable(3, i) for i in range(3))
    keep = [x * y - z * z]
    avoid = [x + y + 1]
    assert torus_count(keep, avoid, q, 3) == torus_count(keep, avoid, q, 3, split=False)


def test_vanishing_patterns_partition_torus():
    a, b, c = sl2_terms()
    fam = [a + b, b + c]
    for q in (3, 5):
        total = 0
        for mask in product([0, 1], repeat=2):
            keep = [f for f, m in zip(fam, mask) if m]
            avoid = [f for f, m in zip(fam, mask) if not m]
            total += torus_count(keep, avoid, q, 6)
        assert total == (q - 1) ** 6


def test_finite_fields():
    F = GF(3, 2)
    assert F.q == 9
    g = 1
    seen = set()
    for _ in range(8):
        seen.add(g)
        g = F.mul(g, F.EXP[1])
    assert len(seen) == 8
    assert tuple(primitive_polynomial(2, 2)) == (1, 1, 1)
    for x in range(1, 9):
        assert F.mul(x, F.inv(x)) == 1


def test_square_of_linear_form_is_degenerate():
    x, y = L.variable(2, 0), L.variable(2, 1)
    f = x * x + x * y * 2 + y * y
    v = nondegeneracy_check(PolyFamily([[f]], 2))
    assert v.status == "WitnessNo"
    assert len({w.p for w in v.witnesses}) >= 2
    assert is_degenerate_point([f], (1, 4), GF(5))


def test_binomials_are_certified():
    x, y = L.variable(2, 0), L.variable(2, 1)
    v = nondegeneracy_check(PolyFamily([[x - y, x * x - y * 3]], 2))
    assert v.status == "CertifiedYes"


def test_sl2_is_likely_nondegenerate():
    a, b, c = sl2_terms()
    v = nondegeneracy_check(PolyFamily([[a + b + c]], 6))
    assert v.status == "LikelyYes"
    assert 2 in v.bad_primes


@pytest.mark.parametrize("shift", [(1, 0), (0, -2), (3, 1)])
def test_verdicts_invariant_under_monomial_rescaling(shift):
    x, y = L.variable(2, 0), L.variable(2, 1)
    fams = [[x * x + x * y * 2 + y * y], [x + y + 1], [x - y]]
    for fs in fams:
        v1 = nondegeneracy_check(PolyFamily([fs], 2)).status
        v2 = nondegeneracy_check(PolyFamily([[f.shift(shift) for f in fs]], 2)).status
        assert v1 == v2


def test_witness_independence_within_normal_cone():
    a, b, c = sl2_terms()
    f = a + b + c
    P = newton_polytope(f)
    for face in face_lattice(P):
        w = face.witness
        w2 = tuple(2 * x for x in w)
        assert f.initial_form(w) == f.initial_form(w2)
