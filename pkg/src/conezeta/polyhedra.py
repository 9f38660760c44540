"""Lattice polytopes, half-open rational cones and their combinatorics.

Everything is exact.  Extreme rays and facets come from one double
description routine; polytopes are hulled in coordinates of their affine
hull so that low-dimensional Newton polytopes in large ambient spaces stay
cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd

from .errors import NotPointed
from .exactlinalg import (
    dot,
    feasible_point,
    int_inverse,
    inverse,
    nullspace,
    primitive,
    rank,
    saturate_and_complete,
)


def _tup(v):
    return tuple(int(x) for x in v)


# ------------------------------------------------------------------ cones

@dataclass(frozen=True)
class HalfOpenCone:
    """{ω : ⟨a,ω⟩ ≥ 0 (closed), ⟨b,ω⟩ > 0 (strict), ⟨e,ω⟩ = 0 (equations)}."""

    ambient_dim: int
    closed_ineqs: tuple = ()
    strict_ineqs: tuple = ()
    equations: tuple = ()

    def __post_init__(self):
        for name in ("closed_ineqs", "strict_ineqs", "equations"):
            rows = tuple(_tup(r) for r in getattr(self, name))
            for r in rows:
                if len(r) != self.ambient_dim:
                    raise ValueError(f"row {r} has wrong length for dimension {self.ambient_dim}")
            object.__setattr__(self, name, rows)

    def contains(self, w):
        return (all(dot(a, w) >= 0 for a in self.closed_ineqs)
                and all(dot(b, w) > 0 for b in self.strict_ineqs)
                and all(dot(e, w) == 0 for e in self.equations))

    def relaxed(self):
        """The closure candidate: strict relations relaxed to ≥."""
        return HalfOpenCone(self.ambient_dim, self.closed_ineqs + self.strict_ineqs, (), self.equations)

    def embed(self, new_dim):
        """Pull back along the projection ℝ^new_dim → ℝ^n onto the first n coordinates."""
        pad = (0,) * (new_dim - self.ambient_dim)
        return HalfOpenCone(new_dim,
                            tuple(r + pad for r in self.closed_ineqs),
                            tuple(r + pad for r in self.strict_ineqs),
                            tuple(r + pad for r in self.equations))

    def scaled(self, factors):
        """Same cone with rows multiplied by positive integers (cycled)."""
        def sc(rows, off):
            return tuple(tuple(x * factors[(i + off) % len(factors)] for x in r) for i, r in enumerate(rows))
        return HalfOpenCone(self.ambient_dim, sc(self.closed_ineqs, 0), sc(self.strict_ineqs, 1),
                            sc(self.equations, 2))

    def to_dict(self):
        return {"dim": self.ambient_dim, "closed": [list(r) for r in self.closed_ineqs],
                "strict": [list(r) for r in self.strict_ineqs], "equations": [list(r) for r in self.equations]}


def orthant(n, strict=False):
    rows = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return HalfOpenCone(n, () if strict else rows, rows if strict else ())


def whole_space(n):
    return HalfOpenCone(n)


def intersect_halfopen(cones, ambient_dim=None, strict_positive=()):
    """Concatenate H-representations.

    Cones of smaller ambient dimension are embedded into ``ambient_dim`` by
    padding (product with ℝ^extra); ``strict_positive`` lists coordinates
    that additionally get a strict positivity constraint.  Emptiness is not
    checked.
    """
    cones = list(cones)
    n = ambient_dim if ambient_dim is not None else max(c.ambient_dim for c in cones)
    cl, st, eq = [], [], []
    for c in cones:
        if c.ambient_dim != n:
            if c.ambient_dim > n:
                raise ValueError("cone lives in a larger space")
            c = c.embed(n)
        cl.extend(c.closed_ineqs)
        st.extend(c.strict_ineqs)
        eq.extend(c.equations)
    for i in strict_positive:
        st.append(tuple(int(i == j) for j in range(n)))
    return HalfOpenCone(n, _dedupe(cl), _dedupe(st), _dedupe(eq))


def _dedupe(rows):
    seen = {}
    for r in rows:
        p = primitive(r)
        if any(p):
            seen.setdefault(p, None)
    return tuple(seen)


def is_empty(C: HalfOpenCone):
    """Returns (empty, witness).  The witness is a rational point of C."""
    w = feasible_point(C.closed_ineqs, C.strict_ineqs, C.equations, C.ambient_dim)
    if w is None:
        return True, None
    return False, w


def integer_witness(C: HalfOpenCone):
    """A primitive integer point of C (zero vector if C has no strict rows)."""
    empty, w = is_empty(C)
    if empty:
        return None
    if not any(w):
        return tuple(0 for _ in w)
    return primitive(w)


# ------------------------------------------------------ double description

def _dd(rows, k):
    """Extreme rays of the pointed cone {y ∈ ℝ^k : ⟨a,y⟩ ≥ 0 for a in rows}.

    Requires rank(rows) = k.  Returns primitive integer rays.
    """
    rows = [list(r) for r in rows]
    if k == 0:
        return []
    # greedy independent subset to seed the iteration
    basis = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
            if len(basis) == k:
                break
    if len(basis) < k:
        raise NotPointed("cone contains a line")
    B = [rows[i] for i in basis]
    Binv = inverse(B)
    rays = [primitive([Binv[c][j] for c in range(k)]) for j in range(k)]
    order = basis + [i for i in range(len(rows)) if i not in set(basis)]
    pos_of = {}
    zeros = []
    for r in rays:
        z = 0
        for bit, i in enumerate(basis):
            if dot(rows[i], r) == 0:
                z |= 1 << bit
        zeros.append(z)
    for bit, i in enumerate(basis):
        pos_of[i] = bit
    nbit = len(basis)
    for i in order[len(basis):]:
        a = rows[i]
        vals = [dot(a, r) for r in rays]
        P = [j for j, v in enumerate(vals) if v > 0]
        N = [j for j, v in enumerate(vals) if v < 0]
        bit = 1 << nbit
        nbit += 1
        if not N:
            zeros = [z | bit if vals[j] == 0 else z for j, z in enumerate(zeros)]
            continue
        new_rays, new_zeros = [], []
        for j, r in enumerate(rays):
            if vals[j] >= 0:
                new_rays.append(r)
                new_zeros.append(zeros[j] | bit if vals[j] == 0 else zeros[j])
        need = k - 2
        for p in P:
            for q in N:
                Z = zeros[p] & zeros[q]
                if bin(Z).count("1") < need:
                    continue
                ok = True
                for j in range(len(rays)):
                    if j != p and j != q and (zeros[j] & Z) == Z:
                        ok = False
                        break
                if not ok:
                    continue
                vp, vq = vals[p], vals[q]
                r = primitive([vp * x - vq * y for x, y in zip(rays[q], rays[p])])
                new_rays.append(r)
                new_zeros.append(Z | bit)
        rays, zeros = new_rays, new_zeros
    # dedupe
    out = []
    seen = set()
    for r in rays:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


@dataclass
class ClosedCone:
    """A closed pointed cone expressed in a saturated lattice basis of its span.

    ``basis`` rows (integer, saturated) span the linear hull; ``rays`` are
    primitive coordinate vectors w.r.t. that basis; ``facets`` are frozensets
    of ray indices.  ``dim`` is the dimension of the cone.
    """

    ambient_dim: int
    basis: list
    rays: list
    facets: list
    constraint_rows: list = field(default_factory=list)

    @property
    def dim(self):
        return len(self.basis)

    def ambient_ray(self, i):
        r = self.rays[i]
        return tuple(sum(r[j] * self.basis[j][c] for j in range(self.dim)) for c in range(self.ambient_dim))


def closed_cone(C: HalfOpenCone, relax=True):
    """Closed pointed cone cut out by C's closed (and relaxed strict) rows.

    Raises NotPointed if the result contains a line.
    """
    n = C.ambient_dim
    ineqs = list(C.closed_ineqs) + (list(C.strict_ineqs) if relax else [])
    K = nullspace(C.equations, n) if C.equations else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if K:
        Kb, _ = saturate_and_complete(K, n)
        K = [list(v) for v in Kb.basis_vectors]
    k = len(K)
    if k == 0:
        return ClosedCone(n, [], [], [], [])
    proj = [[dot(a, kv) for kv in K] for a in ineqs]
    proj = [p for p in proj if any(p)]
    if rank(proj) < k:
        raise NotPointed("closure contains a line")
    yrays = _dd(proj, k)
    amb = [tuple(sum(y[j] * K[j][c] for j in range(k)) for c in range(n)) for y in yrays]
    if not amb:
        return ClosedCone(n, [], [], [], [])
    # re-express in a saturated basis of the span of the rays
    Lb, A = saturate_and_complete(amb, n)
    L = [list(v) for v in Lb.basis_vectors]
    Ainv = int_inverse(A)
    d = len(L)
    rays = [tuple(sum(v[i] * Ainv[i][j] for i in range(n)) for j in range(d)) for v in amb]
    facets = _facets_from_rows(rays, [[dot(a, lv) for lv in L] for a in ineqs], d)
    return ClosedCone(n, L, rays, facets, [[dot(a, lv) for lv in L] for a in ineqs])


def _facets_from_rows(rays, rows, d):
    if d == 0:
        return []
    out = set()
    for a in rows:
        if not any(a):
            continue
        Z = frozenset(i for i, r in enumerate(rays) if dot(a, r) == 0)
        if len(Z) >= d - 1 and len(Z) < len(rays) and _rank_of(tuple(rays[i] for i in sorted(Z))) == d - 1:
            out.add(Z)
    return sorted(out, key=lambda s: sorted(s))


@lru_cache(maxsize=200000)
def _rank_of(vecs):
    return rank([list(v) for v in vecs])


def pulling_triangulation(vectors, facets, d):
    """Triangulate the pointed cone generated by ``vectors`` (full rank d).

    ``facets`` lists the facets as index sets.  The lowest-index generator is
    pulled at every level, which makes the output deterministic.  Returns a
    list of sorted index tuples, each of size d.
    """
    vectors = [tuple(v) for v in vectors]
    facets = [frozenset(f) for f in facets]

    def rk(idx):
        return _rank_of(tuple(vectors[i] for i in sorted(idx)))

    def rec(idx, dim):
        if len(idx) == dim:
            return [tuple(sorted(idx))]
        v = min(idx)
        subs = set()
        for F in facets:
            G = idx & F
            if v in G or len(G) < dim - 1:
                continue
            if rk(G) == dim - 1:
                subs.add(frozenset(G))
        # keep maximal only (distinct facets of a face are incomparable anyway)
        out = []
        for G in sorted(subs, key=lambda s: sorted(s)):
            for S in rec(G, dim - 1):
                out.append(tuple(sorted(S + (v,))))
        return out

    if d == 0:
        return [()]
    return rec(frozenset(range(len(vectors))), d)


# --------------------------------------------------------------- polytopes

@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer points.

    ``facets`` holds pairs (normal, offset) meaning ⟨normal, x⟩ ≥ offset,
    valid within the affine hull; ``hull_equations`` pairs (e, c) with
    ⟨e, x⟩ = c cut out the affine hull.
    """

    ambient_dim: int
    vertices: tuple
    facets: tuple = ()
    hull_equations: tuple = ()
    dim: int = 0

    def facet_vertex_sets(self):
        return [frozenset(i for i, v in enumerate(self.vertices) if dot(a, v) == b) for a, b in self.facets]

    def translate(self, t):
        vs = tuple(tuple(x + y for x, y in zip(v, t)) for v in self.vertices)
        return LatticePolytope(self.ambient_dim, vs,
                               tuple((a, b + dot(a, t)) for a, b in self.facets),
                               tuple((e, c + dot(e, t)) for e, c in self.hull_equations), self.dim)

    def min_face(self, w):
        vals = [dot(v, w) for v in self.vertices]
        m = min(vals)
        return frozenset(i for i, x in enumerate(vals) if x == m)


@dataclass(frozen=True)
class FaceRecord:
    vertex_subset: frozenset
    normal_cone: HalfOpenCone
    dim: int
    summand_faces: tuple = None
    witness: tuple = None

    def key(self):
        return tuple(sorted(self.vertex_subset))


def convex_hull(points):
    """Irredundant vertices and facet inequalities of conv(points)."""
    pts = sorted(set(_tup(p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    n = len(pts[0])
    v0 = pts[0]
    diffs = [tuple(p[i] - v0[i] for i in range(n)) for p in pts]
    Lb, A = saturate_and_complete(diffs, n)
    d = Lb.rank
    hull_eq = []
    for e in nullspace([list(v) for v in Lb.basis_vectors], n) if d else [tuple(int(i == j) for j in range(n)) for i in range(n)]:
        hull_eq.append((tuple(e), dot(e, v0)))
    if d == 0:
        return LatticePolytope(n, (v0,), (), tuple(hull_eq), 0)
    Ainv = int_inverse(A)
    coords = [tuple(sum(df[i] * Ainv[i][j] for i in range(n)) for j in range(d)) for df in diffs]
    lifted = [(1,) + c for c in coords]
    # facets of conv = rays of the dual of the lifted cone
    frays = _dd(lifted, d + 1)
    facets = []
    inc = []
    for y in frays:
        y0, w = y[0], y[1:]
        # ⟨w,c⟩ ≥ -y0 in local coords; pull back to ambient coordinates
        wn = tuple(sum(Ainv[i][j] * w[j] for j in range(d)) for i in range(n))
        off = dot(wn, v0) - y0
        facets.append((wn, off))
        inc.append(frozenset(i for i, c in enumerate(lifted) if dot(y, c) == 0))
    # vertices: points whose incident facets have normals of rank d
    verts = []
    for i, p in enumerate(pts):
        normals = [frays[j][1:] for j in range(len(frays)) if i in inc[j]]
        if rank([list(x) for x in normals]) == d:
            verts.append(p)
    facets = sorted(set((primitive_affine(a, b)) for a, b in facets))
    return LatticePolytope(n, tuple(verts), tuple(facets), tuple(hull_eq), d)


def primitive_affine(a, b):
    g = 0
    for x in a:
        g = gcd(g, x)
    g = gcd(g, b) if g else abs(b)
    if g > 1:
        return tuple(x // g for x in a), b // g
    return tuple(a), b


def point_polytope(p):
    return convex_hull([p])


def face_dim(P: LatticePolytope, idx):
    vs = [P.vertices[i] for i in sorted(idx)]
    v0 = vs[0]
    return rank([[x - y for x, y in zip(v, v0)] for v in vs[1:]]) if len(vs) > 1 else 0


def normal_cone(P: LatticePolytope, idx, edges=None):
    """Relatively open normal cone of the face with vertex indices ``idx``.

    Inner normals: ω lies in it iff the minimum of ⟨·,ω⟩ over P is attained
    exactly on that face.  With ``edges`` (vertex pairs) only edges leaving
    the face give strict rows, which is equivalent and much shorter.
    """
    idx = sorted(idx)
    inside = set(idx)
    v0 = P.vertices[idx[0]]
    eqs = [tuple(x - y for x, y in zip(P.vertices[i], v0)) for i in idx[1:]]
    if edges is None:
        st = [tuple(x - y for x, y in zip(P.vertices[i], v0)) for i in range(len(P.vertices)) if i not in inside]
    else:
        st = []
        for a, b in edges:
            if (a in inside) != (b in inside):
                u, v = (b, a) if a in inside else (a, b)
                st.append(tuple(x - y for x, y in zip(P.vertices[u], P.vertices[v])))
    return HalfOpenCone(P.ambient_dim, (), _dedupe(st), _dedupe(eqs))


def face_lattice(P: LatticePolytope, with_witness=True):
    """All nonempty faces with relatively open normal cones, sorted by
    (dimension, vertex indices)."""
    fsets = P.facet_vertex_sets()
    full = frozenset(range(len(P.vertices)))
    faces = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for F in frontier:
            for G in fsets:
                H = F & G
                if H and H not in faces:
                    faces.add(H)
                    nxt.append(H)
        frontier = nxt
    # keep only genuine faces: vertex sets closed under the facet closure
    out = []
    for F in faces:
        if F != full:
            containing = [G for G in fsets if F <= G]
            closure = full
            for G in containing:
                closure = closure & G
            if closure != F:
                continue
        out.append(F)
    dims = {F: face_dim(P, F) for F in out}
    edges = [tuple(sorted(F)) for F in out if dims[F] == 1]
    recs = []
    for F in out:
        nc = normal_cone(P, F, edges)
        wit = integer_witness(nc) if with_witness else None
        recs.append(FaceRecord(F, nc, dims[F], None, wit))
    out = recs
    out.sort(key=lambda f: (f.dim, f.key()))
    return out


def minkowski_points(summands):
    pts = {tuple(0 for _ in range(summands[0].ambient_dim))}
    for Q in summands:
        pts = {tuple(a + b for a, b in zip(p, v)) for p in pts for v in Q.vertices}
        if len(pts) > 50:
            pts = set(convex_hull(pts).vertices)
    return pts


def minkowski_sum(summands):
    """Minkowski sum and its faces with summand decompositions.

    Returns (P, faces) where every FaceRecord carries ``summand_faces``:
    one frozenset of vertex indices per summand.
    """
    summands = list(summands)
    P = convex_hull(minkowski_points(summands))
    faces = []
    for f in face_lattice(P):
        w = f.witness
        dec = tuple(Q.min_face(w) for Q in summands)
        faces.append(FaceRecord(f.vertex_subset, f.normal_cone, f.dim, dec, w))
    return P, faces


def dual_cone_of_polytope(P: LatticePolytope):
    """{ω : ⟨α,ω⟩ ≥ 0 for all α ∈ P}; one closed row per vertex."""
    return HalfOpenCone(P.ambient_dim, tuple(v for v in P.vertices if any(v)))


def visible_faces(C0: HalfOpenCone, P: LatticePolytope, faces=None):
    """Faces whose normal cone meets C0, each paired with C0 ∩ N_τ(P)."""
    if faces is None:
        faces = face_lattice(P, with_witness=False)
    out = []
    for f in faces:
        C = intersect_halfopen([C0, f.normal_cone])
        empty, w = is_empty(C)
        if not empty:
            out.append((f, C, w))
    return out


def lattice_points_box(n, B):
    """All integer vectors in [−B, B]^n (used by property checks)."""
    return product(range(-B, B + 1), repeat=n)
