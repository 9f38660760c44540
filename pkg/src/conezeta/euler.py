"""Lattice volumes, mixed volumes and Khovanskii's Euler characteristics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial

from .errors import DimensionMismatch, NotInSubspace
from .exactlinalg import LatticeBasis, det, int_inverse, saturate_and_complete
from .polyhedra import LatticePolytope, convex_hull, pulling_triangulation


@dataclass(frozen=True)
class LatticeSubspace:
    """U ∩ ℤⁿ with a saturated (Hermite-reduced) basis."""

    ambient_dim: int
    basis: LatticeBasis

    @classmethod
    def spanned_by(cls, vectors, n):
        vectors = [tuple(v) for v in vectors if any(v)]
        if not vectors:
            return cls(n, LatticeBasis(n, ()))
        B, _ = saturate_and_complete(vectors, n)
        return cls(n, B)

    @classmethod
    def full(cls, n):
        return cls.spanned_by([tuple(int(i == j) for j in range(n)) for i in range(n)], n)

    @property
    def dim(self):
        return self.basis.rank

    def coordinates(self, v):
        """Coordinates of an integer vector of U in the basis; NotInSubspace otherwise."""
        n, d = self.ambient_dim, self.dim
        if not d:
            if any(v):
                raise NotInSubspace(f"{v} is not in the zero subspace")
            return ()
        _, A = self._completion()
        Ainv = self._inv()
        y = [sum(v[i] * Ainv[i][j] for i in range(n)) for j in range(n)]
        if any(y[d:]):
            raise NotInSubspace(f"{tuple(v)} does not lie in the subspace")
        return tuple(y[:d])

    def _completion(self):
        return _completion(self.basis.basis_vectors, self.ambient_dim)

    def _inv(self):
        return _inv_completion(self.basis.basis_vectors, self.ambient_dim)


@lru_cache(maxsize=4096)
def _completion(basis, n):
    return saturate_and_complete(list(basis), n)


@lru_cache(maxsize=4096)
def _inv_completion(basis, n):
    return int_inverse(_completion(basis, n)[1])


def _local_points(P, U: LatticeSubspace):
    verts = P.vertices if isinstance(P, LatticePolytope) else P
    v0 = verts[0]
    return [U.coordinates(tuple(x - y for x, y in zip(v, v0))) for v in verts]


def _volume_of_points(pts, d):
    """d-dimensional volume of conv(pts) ⊂ ℝᵈ (0 if lower-dimensional)."""
    if d == 0:
        return Fraction(1)
    H = convex_hull(pts)
    if H.dim < d:
        return Fraction(0)
    lifted = [(1,) + tuple(v) for v in H.vertices]
    facets = H.facet_vertex_sets()
    total = 0
    for S in pulling_triangulation(lifted, facets, d + 1):
        total += abs(det([list(lifted[i]) for i in S]))
    return Fraction(total, factorial(d))


def lattice_volume(P, U: LatticeSubspace):
    """Volume of P (translated into U) in the coordinates of U's lattice."""
    return _volume_of_points(_local_points(P, U), U.dim)


def _msum_points(point_sets, weights):
    pts = {(0,) * len(point_sets[0][0])}
    for S, k in zip(point_sets, weights):
        for _ in range(k):
            pts = {tuple(a + b for a, b in zip(p, v)) for p in pts for v in S}
            if len(pts) > 60:
                pts = set(convex_hull(pts).vertices)
    return sorted(pts)


class _VolumeTable:
    """Vol(Σ k_i Q_i) memoized by the weight vector."""

    def __init__(self, point_sets, d):
        self.point_sets = point_sets
        self.d = d
        self.memo = {}

    def __call__(self, weights):
        weights = tuple(weights)
        if weights not in self.memo:
            if not any(weights):
                self.memo[weights] = Fraction(int(self.d == 0))
            else:
                self.memo[weights] = _volume_of_points(_msum_points(self.point_sets, weights), self.d)
        return self.memo[weights]


def _mixed(vol, mult, d):
    """MV with polytope i repeated mult[i] times (Σ mult = d)."""
    total = Fraction(0)
    for ks in product(*[range(c + 1) for c in mult]):
        if not any(ks):
            continue
        # number of slot subsets giving these counts
        ways = 1
        for c, k in zip(mult, ks):
            ways *= factorial(c) // (factorial(k) * factorial(c - k))
        total += (-1) ** sum(ks) * ways * vol(ks)
    return (-1) ** d * total / factorial(d)


def mixed_volume(Qs, U: LatticeSubspace):
    Qs = list(Qs)
    d = U.dim
    if len(Qs) != d:
        raise DimensionMismatch(f"{len(Qs)} polytopes for a {d}-dimensional space")
    if d == 0:
        return Fraction(1)
    pts = [_local_points(Q, U) for Q in Qs]
    # merge identical polytopes to exploit symmetry
    uniq, mult = [], []
    for p in pts:
        key = sorted(p)
        for i, u in enumerate(uniq):
            if sorted(u) == key:
                mult[i] += 1
                break
        else:
            uniq.append(p)
            mult.append(1)
    return _mixed(_VolumeTable(uniq, d), mult, d)


def _compositions(d, r):
    """Compositions of d into r positive parts, colex order."""
    if r == 0:
        if d == 0:
            yield ()
        return
    for cuts in combinations(range(1, d), r - 1):
        parts = []
        prev = 0
        for c in cuts + (d,):
            parts.append(c - prev)
            prev = c
        yield tuple(parts)


def _khovanskii_points(pts, d, vol=None, idx=None):
    r = len(pts)
    if r == 0:
        return Fraction(int(d == 0))
    if r > d:
        return Fraction(0)
    if vol is None:
        vol = _VolumeTable(pts, d)
        idx = list(range(r))
    total = Fraction(0)
    nP = len(vol.point_sets)
    for c in _compositions(d, r):
        mult = [0] * nP
        for i, ci in zip(idx, c):
            mult[i] += ci
        sub = [i for i in range(nP) if mult[i]]
        total += _mixed(lambda ks: vol(_expand(ks, sub, nP)), [mult[i] for i in sub], d)
    return (-1) ** (d + r) * factorial(d) * total


def _expand(ks, sub, nP):
    full = [0] * nP
    for i, k in zip(sub, ks):
        full[i] = k
    return tuple(full)


def khovanskii(Ps, U: LatticeSubspace):
    """Χ^U(P₁,…,P_r)."""
    Ps = list(Ps)
    pts = [_local_points(P, U) for P in Ps]
    return _khovanskii_points(pts, U.dim)


def joint_subspace(Ps, n):
    """L(𝒫): span of all P_i − x_i."""
    vecs = []
    for P in Ps:
        verts = P.vertices if isinstance(P, LatticePolytope) else P
        v0 = verts[0]
        vecs.extend(tuple(x - y for x, y in zip(v, v0)) for v in verts[1:])
    return LatticeSubspace.spanned_by(vecs, n)


def relative_khovanskii(Ps, J, n=None):
    """χ^rel_J = Σ_{J⊂T⊂I} (−1)^{|T|+|J|} Χ^{L(𝒫)}(P_t − x_t)_{t∈T}.

    ``Ps`` is a list of polytopes (or vertex lists) indexed by I = range(len(Ps)).
    """
    Ps = list(Ps)
    if n is None:
        first = Ps[0].vertices[0] if isinstance(Ps[0], LatticePolytope) else Ps[0][0]
        n = len(first)
    U = joint_subspace(Ps, n)
    d = U.dim
    pts = [_local_points(P, U) for P in Ps]
    vol = _VolumeTable(pts, d)
    J = set(J)
    rest = [i for i in range(len(Ps)) if i not in J]
    total = Fraction(0)
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            T = sorted(J | set(extra))
            total += (-1) ** r * _khovanskii_points([pts[t] for t in T], d, vol, T)
    return total


def relative_table(Ps, n=None):
    """χ^rel_J for every subset J (as sorted tuples)."""
    Ps = list(Ps)
    out = {}
    for r in range(len(Ps) + 1):
        for J in combinations(range(len(Ps)), r):
            out[J] = relative_khovanskii(Ps, J, n)
    return out
