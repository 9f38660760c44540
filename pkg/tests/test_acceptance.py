"""Acceptance suite.  Every criterion prints one PASS/FAIL line (with its
runtime against the allowed limit) in the pytest summary.

Run alone with ``python3 tests/test_acceptance.py``.
"""

import contextlib
import random
import sys
import time
from fractions import Fraction

import pytest

from cases import data, expected, padic, rank, top
from conftest import record
from conezeta.algebra import CATALOG, zero_algebra
from conezeta.conegen import genfun_substituted, zed_cone_polytopes
from conezeta.errors import DegenerateFamily, NotPointed
from conezeta.exactlinalg import det
from conezeta.euler import LatticeSubspace, joint_subspace, lattice_volume, mixed_volume, relative_table
from conezeta.laurent import LaurentPolynomial as L
from conezeta.newton import PolyFamily, nondegeneracy_check
from conezeta.oracle import all_sublattices_series, check_igusa_identity, cone_partial_sum, sublattice_counts
from conezeta.polyhedra import HalfOpenCone, closed_cone, convex_hull, face_lattice, is_empty, pulling_triangulation
from conezeta.ratfun import TermSum, make_term, normalize_fraction, power_series_coeffs, univariate
from conezeta.roots import conjecture_report
from conezeta.zeta import igusa_front, topological_zeta


@contextlib.contextmanager
def criterion(label, limit):
    t0 = time.time()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.time() - t0
        status = "PASS" if ok and dt <= limit else "FAIL"
        record(f"{status}  {label}  [{dt:.1f}s, limit {limit:g}s]")
    assert dt <= limit, f"{label} took {dt:.1f}s (limit {limit}s)"


def fixed_q(num_terms, den):
    return TermSum(1, [make_term(c, 0, a, (b,), den) for c, a, b in num_terms])


def series(name, q, k):
    return [int(c) for c in power_series_coeffs(padic(name, q)[0], k, q)]


SL2 = expected([-1, 3], [((2, -1), 1), ((1, -1), 2), ((1, 0), 1)], 2)
HEIS = expected([3], [((2, -3), 1), ((1, -1), 1), ((1, 0), 1)], 2)
HH = expected([-21, 17], [((3, -4), 1), ((3, -7), 1), ((1, -3), 1), ((1, -2), 1), ((1, -1), 1), ((1, 0), 1)], 3)
CH2 = expected([-2, 3], [((1, -1), 3), ((1, 0), 1)], 4)
CH3 = expected([14], [((5, -6), 1), ((5, -7), 1), ((1, -2), 1), ((1, 0), 1)])
CH4 = expected([-25, 17], [((3, -4), 1), ((3, -5), 2), ((1, -3), 1), ((1, -2), 1), ((1, 0), 1)])
U2 = expected([1], [((2, -1), 1), ((1, 0), 1)])
U3 = expected([-1, 4], [((3, -1), 1), ((2, -1), 2), ((1, 0), 1)], 2)
U4 = expected([-8, 136, -930, 3139, -5192, 3360],
              [((7, -3), 1), ((5, -2), 1), ((4, -1), 1), ((3, -1), 2), ((2, -1), 3), ((1, 0), 1)], 8)


def z_expected(d):
    return expected([1], [((1, -j), 1) for j in range(d)])


def test_criterion_01_sl2_padic():
    with criterion("1  sl2 p-adic closed form at q = 3, 5, 7", 120):
        den = [(1, (2,)), (2, (2,)), (1, (1,)), (0, (1,))]
        E = fixed_q([(1, 0, 0), (-1, 1, 3)], den)
        for q in (3, 5, 7):
            assert normalize_fraction(padic("sl2", q)[0], q) == normalize_fraction(E, q)


def test_criterion_02_sl2_topological():
    with criterion("2  sl2 topological", 60):
        T, rep = top("sl2")
        assert T == SL2
        assert rep.verdict.status != "WitnessNo"


def test_criterion_03_heisenberg():
    with criterion("3  Heisenberg topological and a_{3^k}, k <= 3", 120):
        assert top("heisenberg")[0] == HEIS
        counts = sublattice_counts(CATALOG["heisenberg"](), 3, 3)
        assert series("heisenberg", 3, 3) == counts.counts


def test_criterion_04_hh():
    with criterion("4  h x h topological", 3600):
        assert top("hh")[0] == HH


@pytest.mark.parametrize("name,formula", [("ch2", CH2), ("bgamma3", CH3), ("bgamma4", CH4)])
def test_criterion_05_ch(name, formula):
    with criterion(f"5  {name} topological", 3600):
        assert top(name)[0] == formula


@pytest.mark.parametrize("name,formula", [("u2", U2), ("u3", U3), ("u4", U4)])
def test_criterion_06_unipotent(name, formula):
    with criterion(f"6  {name} submodule topological", 3600):
        assert top(name)[0] == formula


def test_criterion_07_zero_algebras():
    with criterion("7  (Z^d, 0), d <= 4: topological and Hermite counts at p = 3", 60):
        for d in (1, 2, 3, 4):
            assert top(f"z{d}")[0] == z_expected(d)
            s = series(f"z{d}", 3, 3)
            assert s == sublattice_counts(zero_algebra(d), 3, 3).counts
            assert s == all_sublattices_series(d, 3, 3)


def test_criterion_08_igusa():
    with criterion("8  Igusa: x, x^e, x^2 + y^2 congruence identity", 300):
        x = L.variable(1, 0)
        for q in (3, 5, 7):
            out = igusa_front([x], q=q)
            E = fixed_q([(1, 0, 0), (-1, -1, 0)], [(-1, (1,))])
            assert normalize_fraction(out["padic"], q) == normalize_fraction(E, q)
            assert out["topological"] == univariate([1], [((1, 1), 1)])
        for e in (2, 3, 4):
            assert igusa_front([x ** e])["topological"] == univariate([1], [((e, 1), 1)])
        X, Y = L.variable(2, 0), L.variable(2, 1)
        f = X * X + Y * Y
        for p in (5, 13):
            Z = igusa_front([f], q=p)["padic"]
            ok, _, _ = check_igusa_identity(f, Z, p, 3)
            assert ok


def test_criterion_09_full_matrix_module():
    with criterion("9  full matrix algebra on Z^2: 1/(1 - q^{-2s}) at q = 3, topological 0", 60):
        W = padic("mat2", 3)[0]
        E = fixed_q([(1, 0, 0)], [(0, (2,))])
        assert normalize_fraction(W, 3) == normalize_fraction(E, 3)
        assert series("mat2", 3, 5) == [1, 0, 1, 0, 1, 0]
        assert top("mat2")[0].is_zero()


NILPOTENT = ["heisenberg", "hh", "ch2", "bgamma3", "bgamma4", "u2", "u3", "u4", "z1", "z2", "z3", "z4"]


def test_criterion_10_conjectures():
    with criterion("10 degree, pole, residue and numerator roots of every computed example", 60):
        bad = []
        for name in ["sl2"] + NILPOTENT:
            T = top(name)[0]
            rep = conjecture_report(T, rank(name), nilpotent=name in NILPOTENT)
            if not all(rep.values()):
                bad.append((name, rep))
        assert not bad, bad


# ----------------------------------------------------------- property suites

def random_cone(rng, n):
    while True:
        rows = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(1, 4))]
        rows = [r for r in rows if any(r)]
        strict = [r for r in rows if rng.random() < 0.4]
        closed = [r for r in rows if r not in strict] + [(1,) * n]
        C = HalfOpenCone(n, tuple(closed), tuple(strict))
        try:
            K = closed_cone(C)
        except NotPointed:
            continue
        if K.rays and all(sum(K.ambient_ray(i)) > 0 for i in range(len(K.rays))) and not is_empty(C)[0]:
            return C


def random_polytope(rng, n=2):
    return convex_hull([tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(rng.randint(1, 4))])


def _genfun_check(rng):
    for _ in range(50):
        n = rng.choice([2, 3])
        C = random_cone(rng, n)
        G = genfun_substituted(C, [[1]] * n)
        coeffs = power_series_coeffs(G, 6, 2)
        for x in (Fraction(1, 2), Fraction(3)):
            truncated = sum(c * x ** k for k, c in enumerate(coeffs))
            assert truncated == cone_partial_sum(C, [[1]] * n, 6, (x,))


def _normal_fan_check(rng):
    for _ in range(20):
        P = random_polytope(rng)
        faces = face_lattice(P)
        for w in [(a, b) for a in range(-3, 4) for b in range(-3, 4)]:
            owners = [f for f in faces if f.normal_cone.contains(w)]
            assert len(owners) == 1
            assert {P.vertices[i] for i in owners[0].vertex_subset} == {P.vertices[i] for i in P.min_face(w)}


def _mixed_volume_check(rng):
    R2 = LatticeSubspace.full(2)
    for _ in range(15):
        P, Q = random_polytope(rng), random_polytope(rng)

        def vol(l, m):
            H = convex_hull({tuple(l * a + m * b for a, b in zip(p, r)) for p in P.vertices for r in Q.vertices})
            return lattice_volume(H, R2) if H.dim == 2 else 0

        mv = mixed_volume([P, Q], R2)
        for l, m in [(1, 1), (2, 1), (1, 3), (2, 3)]:
            assert vol(l, m) == vol(1, 0) * l * l + 2 * mv * l * m + vol(0, 1) * m * m


def _subset_sum_check(rng):
    for _ in range(20):
        Ps = [random_polytope(rng) for _ in range(rng.randint(1, 3))]
        total = sum(relative_table(Ps, 2).values())
        assert total == (1 if joint_subspace(Ps, 2).dim == 0 else 0)


def _choice_and_triangulation_check(rng):
    from conezeta.polyhedra import orthant
    top_vertex = lambda P, idx: max(P.vertices[i] for i in idx)
    for _ in range(10):
        Ps = [random_polytope(rng) for _ in range(rng.randint(1, 2))]
        a = zed_cone_polytopes(orthant(2), Ps)
        b = zed_cone_polytopes(orthant(2), Ps, chooser=top_vertex)
        for q in (3, 5):
            assert normalize_fraction(a, q) == normalize_fraction(b, q)
    for _ in range(20):
        C = random_cone(rng, 3)
        K = closed_cone(C)
        if K.dim != 3:
            continue
        rays = [K.ambient_ray(i) for i in range(len(K.rays))]
        perm = list(range(len(rays)))
        rng.shuffle(perm)
        inv = {p: i for i, p in enumerate(perm)}
        shuffled = [rays[p] for p in perm]
        facets = [frozenset(inv[i] for i in f) for f in K.facets]

        def integral(vectors, simplices, c):
            total = Fraction(0)
            for S in simplices:
                den = 1
                for i in S:
                    den *= sum(a * b for a, b in zip(c, vectors[i]))
                total += Fraction(abs(det([list(vectors[i]) for i in S])), den)
            return total

        # ∫_K exp(−⟨c,ω⟩) dω does not depend on the triangulation
        s1 = pulling_triangulation(rays, K.facets, 3)
        s2 = pulling_triangulation(shuffled, facets, 3)
        assert integral(rays, s1, (1, 1, 1)) == integral(shuffled, s2, (1, 1, 1))


def _rescaling_check(rng):
    X, Y = L.variable(2, 0), L.variable(2, 1)
    fams = [[X * X + X * Y * 2 + Y * Y], [X + Y + 1], [X - Y], [X * X * Y + Y * Y * X + 1]]
    for fs in fams:
        v = nondegeneracy_check(PolyFamily([fs], 2)).status
        for _ in range(3):
            shift = (rng.randint(-3, 3), rng.randint(-3, 3))
            w = nondegeneracy_check(PolyFamily([[f.shift(shift) for f in fs]], 2)).status
            assert v == w


def test_criterion_11_properties():
    rng = random.Random(11)
    with criterion("11 generating functions, normal fans, mixed volumes, subset sums, "
                   "choice independence, rescaling invariance", 600):
        _genfun_check(rng)
        _normal_fan_check(rng)
        _mixed_volume_check(rng)
        _subset_sum_check(rng)
        _choice_and_triangulation_check(rng)
        _rescaling_check(rng)


@pytest.mark.parametrize("name", ["gl2", "fil4", "u5", "ch5"])
def test_refusals(name):
    with criterion(f"R  {name} refused with a degeneracy witness", 600):
        with pytest.raises(DegenerateFamily) as err:
            topological_zeta(data(name))
        info = err.value.to_dict()
        assert info["witness"]["field"]
        assert len({w["field"].split("^")[0] for w in info["verdict"]["witnesses"]}) >= 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
