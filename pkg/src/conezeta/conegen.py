"""Generating functions of half-open rational cones.

A half-open cone C is written as its closure K minus the faces cut out by
its strict rows.  Inclusion–exclusion over those faces (grouped by their
ray sets, so coinciding faces cancel early) leaves a signed list of closed
faces.  Each face is triangulated by pulling; the simplicial pieces are
made disjoint by the generic-point rule of Köppe and Verdoolaege, and their
fundamental parallelepipeds are enumerated through a Smith form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import KernelMeetsCone
from .exactlinalg import det, dot, int_inverse, inverse, saturate_and_complete, smith_normal_form
from .polyhedra import (
    HalfOpenCone,
    LatticePolytope,
    closed_cone,
    intersect_halfopen,
    is_empty,
    minkowski_sum,
    pulling_triangulation,
)
from .ratfun import LinearForm, Term, TermSum, TopRatFun


@dataclass(frozen=True)
class SimplicialHalfOpenCone:
    """Cone over linearly independent primitive ``generators`` (ambient
    coordinates); the facet opposite generator i is removed for every i in
    ``excluded_facets``."""

    generators: tuple
    excluded_facets: frozenset = frozenset()

    @property
    def dim(self):
        return len(self.generators)

    def lattice_data(self):
        """(basis, coords): saturated basis of the span and generator coordinates."""
        n = len(self.generators[0]) if self.generators else 0
        if not self.generators:
            return [], []
        B, A = saturate_and_complete(self.generators, n)
        Ainv = int_inverse(A)
        d = len(self.generators)
        coords = [tuple(sum(g[i] * Ainv[i][j] for i in range(n)) for j in range(d)) for g in self.generators]
        return [list(v) for v in B.basis_vectors], coords

    def index(self):
        _, coords = self.lattice_data()
        return abs(det([list(c) for c in coords])) if coords else 1

    def parallelepiped_points(self):
        """Lattice points of the half-open fundamental parallelepiped, in
        ambient coordinates."""
        basis, coords = self.lattice_data()
        return [_to_ambient(p, basis, len(self.generators[0]) if self.generators else 0)
                for p in _parallelepiped(coords, self.excluded_facets)] if self.generators else [()]

    def contains(self, x):
        basis, coords = self.lattice_data()
        if not self.generators:
            return not any(x)
        # coordinates of x in terms of generators
        from .exactlinalg import solve_rational
        lam = solve_rational([list(g) for g in self.generators], list(x))
        if lam is None:
            return False
        for i, l in enumerate(lam):
            if l < 0 or (l == 0 and i in self.excluded_facets):
                return False
        return True


def _to_ambient(c, basis, n):
    return tuple(sum(c[j] * basis[j][i] for j in range(len(basis))) for i in range(n))


def _parallelepiped(coords, excluded):
    """Points Σ μ_i g_i with μ_i ∈ [0,1) (or (0,1] for excluded i), as
    integer coordinate vectors.  ``coords`` is a square integer matrix."""
    d = len(coords)
    if d == 0:
        return [()]
    M = [list(r) for r in coords]
    S, U, V = smith_normal_form(M)
    diag = [S[i][i] for i in range(d)]
    Vinv = int_inverse(V)
    Minv = inverse(M)
    out = []
    for z in iproduct(*[range(abs(s)) for s in diag]):
        x = [sum(z[k] * Vinv[k][j] for k in range(d)) for j in range(d)]
        mu = [sum(x[k] * Minv[k][j] for k in range(d)) for j in range(d)]
        mu = [m - (m.numerator // m.denominator) for m in mu]
        for i in excluded:
            if mu[i] == 0:
                mu[i] = Fraction(1)
        p = tuple(int(sum(mu[k] * M[k][j] for k in range(d))) for j in range(d))
        out.append(p)
    return sorted(out)


def _lex_sign(values):
    for v in values:
        if v:
            return 1 if v > 0 else -1
    return 0


def _face_pieces(K, G):
    """Half-open simplicial decomposition of the face of K with ray set G."""
    G = sorted(G)
    if not G:
        return [SimplicialHalfOpenCone((), frozenset())]
    n = K.ambient_dim
    amb = [K.ambient_ray(i) for i in G]
    Lb, A = saturate_and_complete(amb, n)
    d = Lb.rank
    Ainv = int_inverse(A)
    coords = [tuple(sum(v[i] * Ainv[i][j] for i in range(n)) for j in range(d)) for v in amb]
    # facets of the face: intersections with K's facets, reindexed
    pos = {g: k for k, g in enumerate(G)}
    facets = []
    Gs = set(G)
    for F in K.facets:
        H = frozenset(pos[i] for i in F if i in Gs)
        facets.append(H)
    simplices = pulling_triangulation(coords, facets, d)
    # generic point: sum of rays, perturbed lexicographically by the rays
    y0 = [sum(c[j] for c in coords) for j in range(d)]
    pieces = []
    for S in simplices:
        M = [list(coords[i]) for i in S]
        Minv = inverse(M)
        seq = [y0] + [list(coords[i]) for i in range(len(coords))]
        lams = [[sum(v[k] * Minv[k][j] for k in range(d)) for j in range(d)] for v in seq]
        excl = frozenset(j for j in range(d) if _lex_sign([l[j] for l in lams]) < 0)
        pieces.append(SimplicialHalfOpenCone(tuple(amb[i] for i in S), excl))
    return pieces


def signed_faces(C: HalfOpenCone):
    """Closure K and a list of (weight, ray-index set) with
    1_C = Σ weight · 1_{face}.  Returns (None, []) when C is empty."""
    K = closed_cone(C, relax=True)
    rays = [K.ambient_ray(i) for i in range(len(K.rays))]
    allr = frozenset(range(len(rays)))
    weights = {allr: 1}
    for b in C.strict_ineqs:
        Z = frozenset(i for i, r in enumerate(rays) if dot(b, r) == 0)
        if Z == allr:
            return K, []
        new = dict(weights)
        for G, c in weights.items():
            H = G & Z
            new[H] = new.get(H, 0) - c
        weights = {G: c for G, c in new.items() if c}
    return K, sorted(((c, G) for G, c in weights.items()), key=lambda t: (sorted(t[1]), t[0]))


def triangulate_halfopen(C: HalfOpenCone):
    """Signed simplicial half-open pieces whose weighted indicators sum to 1_C.

    The weight is an integer (usually ±1).  Raises NotPointed if the closure
    contains a line.
    """
    K, faces = signed_faces(C)
    out = []
    for c, G in faces:
        for piece in _face_pieces(K, G):
            out.append((c, piece))
    return out


def genfun_substituted(C: HalfOpenCone, A, pieces=None):
    """Σ_{ω ∈ C ∩ ℤⁿ} ξ^{ωA} as a TermSum in the r = cols(A) variables ξ.

    A is an n×r integer matrix.  The result uses only t-variables; the
    q-exponents are all zero.
    """
    A = [list(r) for r in A]
    r = len(A[0])
    if pieces is None:
        pieces = triangulate_halfopen(C)
    terms = []
    for c, piece in pieces:
        if not piece.generators:
            terms.append(Term(Fraction(c), 0, 0, (0,) * r, ()))
            continue
        den = []
        for g in piece.generators:
            img = tuple(dot(g, [A[i][k] for i in range(len(g))]) for k in range(r))
            if not any(img):
                raise KernelMeetsCone(f"generator {g} lies in the kernel of the substitution")
            den.append((0, img))
        den = tuple(sorted(den))
        for p in piece.parallelepiped_points():
            img = tuple(sum(p[i] * A[i][k] for i in range(len(p))) for k in range(r))
            terms.append(Term(Fraction(c), 0, 0, img, den))
    return TermSum(r, terms)


def _choice_lex(P: LatticePolytope, idx):
    return min(P.vertices[i] for i in idx)


def substitution_matrix(n, vs):
    """A(v) = [1ᵀ, v_1ᵀ, …, v_mᵀ] as an n×(m+1) matrix."""
    return [[1] + [v[i] for v in vs] for i in range(n)]


def zed_cone_polytopes(C0: HalfOpenCone, polytopes, chooser=_choice_lex):
    """Σ over C0-visible faces τ of ΣP_j of genfun(C0 ∩ N_τ, A(v)).

    ``chooser(P_j, face indices)`` picks the vertex v_j of τ_j; the result
    does not depend on that choice.
    """
    polytopes = list(polytopes)
    n = C0.ambient_dim
    m = len(polytopes)
    if m == 0:
        return genfun_substituted(C0, [[1] for _ in range(n)])
    P, faces = minkowski_sum(polytopes)
    total = TermSum(m + 1)
    for f in faces:
        C = intersect_halfopen([C0, f.normal_cone])
        empty, _ = is_empty(C)
        if empty:
            continue
        vs = [chooser(Q, idx) for Q, idx in zip(polytopes, f.summand_faces)]
        total = total + genfun_substituted(C, substitution_matrix(n, vs))
    return total


# ----------------------------------------------------- topological side

def exp_integral(C: HalfOpenCone, vs, D):
    """Sum over full-dimensional simplices σ of the closure of C of
    mult(σ)/∏ ℓ(g_i) with ℓ(ω) = ⟨1,ω⟩ + Σ_j s_j⟨v_j,ω⟩.

    Only pieces of dimension ``D`` are kept; lower-dimensional ones vanish
    after reduction modulo q−1.  Returns a TopRatFun in m = len(vs) variables.
    """
    m = len(vs)
    out = TopRatFun(m)
    empty, _ = is_empty(C)
    if empty:
        return out
    K = closed_cone(C, relax=True)
    if K.dim != D:
        return out
    simplices = pulling_triangulation(K.rays, K.facets, K.dim)
    for S in simplices:
        mult = abs(det([list(K.rays[i]) for i in S]))
        forms = []
        for i in S:
            g = K.ambient_ray(i)
            forms.append(LinearForm(sum(g), tuple(dot(v, g) for v in vs)))
        out._add_term(mult, forms)
    return out


def reduced_zed(C0: HalfOpenCone, polytopes, D, chooser=_choice_lex):
    """Reduction modulo q−1 of (q−1)^D · 𝒵^{C0,P}(q⁻¹, t), computed directly."""
    polytopes = list(polytopes)
    m = len(polytopes)
    if m == 0:
        return exp_integral(C0, [], D)
    P, faces = minkowski_sum(polytopes)
    total = TopRatFun(m)
    for f in faces:
        if f.dim != 0:
            continue
        C = intersect_halfopen([C0, f.normal_cone])
        vs = [chooser(Q, idx) for Q, idx in zip(polytopes, f.summand_faces)]
        total = total + exp_integral(C, vs, D)
    return total
