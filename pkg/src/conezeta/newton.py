"""Newton polytopes, initial forms, finite-field point counts and
non-degeneracy verdicts for families of Laurent polynomials."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .errors import BadPrime, NotPointed, TooLarge, ZeroPolynomial
from .exactlinalg import int_inverse, nullspace, rank, saturate_and_complete
from .laurent import LaurentPolynomial
from .polyhedra import (
    HalfOpenCone,
    closed_cone,
    convex_hull,
    integer_witness,
    intersect_halfopen,
    is_empty,
    whole_space,
)

log = logging.getLogger(__name__)

__all__ = [
    "LaurentPolynomial",
    "PolyFamily",
    "NondegVerdict",
    "GF",
    "newton_polytope",
    "initial_form",
    "face_initials",
    "visible_newton_faces",
    "torus_count",
    "nondegeneracy_check",
    "probe_degeneracy",
    "DEFAULT_POLICY",
    "is_degenerate_point",
    "Witness",
]

DEFAULT_POLICY = {"primes": (3, 5, 7, 11), "max_degree": 3}
ENUM_BUDGET = 10 ** 6
PROBE_COUNT = 24


def newton_polytope(f: LaurentPolynomial):
    if not f:
        raise ZeroPolynomial("Newton polytope of zero")
    return convex_hull(f.support())


def initial_form(f: LaurentPolynomial, w):
    return f.initial_form(w)


class PolyFamily:
    """Groups 𝒇₀ (constraints, Laurent allowed) and 𝒇₁…𝒇_m (integrand)."""

    def __init__(self, groups, n=None):
        groups = [list(g) for g in groups]
        if not groups:
            groups = [[]]
        if n is None:
            n = next((f.n for g in groups for f in g), None)
            if n is None:
                raise ValueError("ambient dimension needed for an empty family")
        self.n = n
        for j, g in enumerate(groups):
            for f in g:
                if not f:
                    raise ZeroPolynomial(f"zero polynomial in group {j}")
                if f.n != n:
                    raise ValueError("mixed ambient dimensions in family")
                if j > 0 and not f.is_polynomial():
                    raise ValueError(f"integrand group {j} contains a Laurent polynomial")
        self.groups = groups
        members = []
        for g in groups:
            for f in g:
                if f not in members:
                    members.append(f)
        self.members = members

    @property
    def m(self):
        return len(self.groups) - 1

    def member_index(self, f):
        return self.members.index(f)

    def group_indices(self, j):
        return [self.members.index(f) for f in self.groups[j]]

    def newton(self):
        """𝒩 = Newton(∏ members) as (P, faces-with-decompositions)."""
        from .polyhedra import minkowski_sum
        if not self.members:
            return None
        return minkowski_sum([newton_polytope(f) for f in self.members])

    def to_json(self):
        return {"n": self.n, "groups": [[f.to_json() for f in g] for g in self.groups]}


@dataclass(frozen=True)
class VisibleFace:
    index: int
    vertex_subset: frozenset
    dim: int
    cone: HalfOpenCone  # C0 ∩ N_τ(𝒩)
    witness: tuple  # integer point of that cone
    summand_faces: tuple


def visible_newton_faces(family: PolyFamily, C0: HalfOpenCone):
    """C0-visible faces of 𝒩 with integer witnesses, canonical order."""
    n = family.n
    if not family.members:
        empty, _ = is_empty(C0)
        if empty:
            return []
        return [VisibleFace(0, frozenset([0]), 0, C0, integer_witness(C0), ())]
    P, faces = family.newton()
    out = []
    for k, f in enumerate(faces):
        C = intersect_halfopen([C0, f.normal_cone], ambient_dim=n)
        empty, _ = is_empty(C)
        if empty:
            continue
        w = integer_witness(C)
        out.append(VisibleFace(k, f.vertex_subset, f.dim, C, tuple(w), f.summand_faces))
    return out


def face_initials(family: PolyFamily, face):
    """Initial forms f^τ of all members at a face (VisibleFace, FaceRecord or ω)."""
    w = face if isinstance(face, (tuple, list)) else face.witness
    return [f.initial_form(w) for f in family.members]


# --------------------------------------------------------- finite fields

def _poly_mulmod(a, b, mod, p):
    """Product of coefficient lists (low degree first) modulo monic ``mod``."""
    e = len(mod) - 1
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    for k in range(len(r) - 1, e - 1, -1):
        c = r[k]
        if c:
            for i in range(e + 1):
                r[k - e + i] = (r[k - e + i] - c * mod[i]) % p
    return (r + [0] * e)[:e]


@lru_cache(maxsize=None)
def primitive_polynomial(p, e):
    """Lexicographically first monic degree-e polynomial over 𝔽_p for which
    X generates the multiplicative group (coefficients low degree first)."""
    if e == 1:
        # smallest primitive root, encoded as X − g
        for g in range(1, p):
            if all(pow(g, (p - 1) // r, p) != 1 for r in _prime_factors(p - 1)):
                return ((-g) % p, 1)
    order = p ** e - 1
    facs = _prime_factors(order)
    for tail in product(range(p), repeat=e):
        mod = list(tail) + [1]
        if mod[0] == 0:
            continue
        # X^order must be 1 and no X^(order/r) equal to 1
        def xpow(k):
            res = [1] + [0] * (e - 1)
            base = [0, 1] + [0] * (e - 2) if e > 1 else [0]
            while k:
                if k & 1:
                    res = _poly_mulmod(res, base, mod, p)
                base = _poly_mulmod(base, base, mod, p)
                k >>= 1
            return res
        one = [1] + [0] * (e - 1)
        if xpow(order) == one and all(xpow(order // r) != one for r in facs):
            return tuple(mod)
    raise ValueError(f"no primitive polynomial for p={p}, e={e}")


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


class GF:
    """𝔽_{p^e}; elements are ints 0..q−1 encoding base-p digit vectors."""

    _cache = {}

    def __new__(cls, p, e=1):
        key = (p, e)
        if key not in cls._cache:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p > 13 and e > 1:
                raise TooLarge("extension fields are tabulated for p ≤ 13 only", p=p, e=e)
            obj = super().__new__(cls)
            obj._build(p, e)
            cls._cache[key] = obj
        return cls._cache[key]

    def _build(self, p, e):
        self.p, self.e, self.q = p, e, p ** e
        q = self.q
        mod = list(primitive_polynomial(p, e))
        self.modulus = tuple(mod)
        exp = np.zeros(q - 1, dtype=np.int64)
        cur = [1] + [0] * (e - 1)
        gen = ([(-mod[0]) % p] if e == 1 else [0, 1] + [0] * (e - 2))
        for i in range(q - 1):
            exp[i] = sum(c * p ** k for k, c in enumerate(cur))
            cur = _poly_mulmod(cur, gen, mod, p)
        self.EXP = exp
        lg = np.full(q, -1, dtype=np.int64)
        lg[exp] = np.arange(q - 1)
        self.LOG = lg
        digits = np.array([[(x // p ** k) % p for k in range(e)] for x in range(q)], dtype=np.int64)
        weights = np.array([p ** k for k in range(e)], dtype=np.int64)
        self.ADD = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).astype(np.int64)
        self.NEG = (((-digits) % p) @ weights).astype(np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        a = np.arange(1, q)
        mul[1:, 1:] = exp[(lg[a][:, None] + lg[a][None, :]) % (q - 1)]
        self.MUL = mul

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    @property
    def name(self):
        return f"F_{self.p}^{self.e}" if self.e > 1 else f"F_{self.p}"

    def from_rational(self, c):
        c = Fraction(c)
        if c.denominator % self.p == 0:
            raise BadPrime(f"denominator of {c} vanishes mod {self.p}", p=self.p)
        return (c.numerator * pow(c.denominator, -1, self.p)) % self.p

    def add(self, a, b):
        return int(self.ADD[a, b])

    def mul(self, a, b):
        return int(self.MUL[a, b])

    def inv(self, a):
        return int(self.EXP[(-self.LOG[a]) % (self.q - 1)])

    def power(self, a, k):
        if a == 0:
            if k <= 0:
                raise ZeroDivisionError("power of zero")
            return 0
        return int(self.EXP[(self.LOG[a] * k) % (self.q - 1)])

    def evaluate(self, f: LaurentPolynomial, u):
        total = 0
        for ex, c in f.coeffs.items():
            v = self.from_rational(c)
            for x, k in zip(u, ex):
                if k:
                    v = self.mul(v, self.power(x, k))
            total = self.add(total, v)
        return total

    def rank(self, M):
        M = [list(r) for r in M]
        r = 0
        cols = len(M[0]) if M else 0
        for c in range(cols):
            piv = next((i for i in range(r, len(M)) if M[i][c]), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            iv = self.inv(M[r][c])
            M[r] = [self.mul(iv, x) for x in M[r]]
            for i in range(len(M)):
                if i != r and M[i][c]:
                    fac = self.NEG[M[i][c]]
                    M[i] = [self.add(x, self.mul(int(fac), y)) for x, y in zip(M[i], M[r])]
            r += 1
        return r


def _reduce(f: LaurentPolynomial, F: GF):
    """(exponents array, coefficient codes) with zero-reduced terms dropped."""
    ex, cs = [], []
    for e, c in sorted(f.coeffs.items()):
        v = F.from_rational(c)
        if v:
            ex.append(e)
            cs.append(v)
    return ex, cs


def _eval_logs(F: GF, ex, cs, L):
    """Values of Σ c·X^α at all points with discrete logs L (N×k)."""
    N = L.shape[0]
    total = np.zeros(N, dtype=np.int64)
    for e, c in zip(ex, cs):
        lg = (L @ np.array(e, dtype=np.int64)) % (F.q - 1)
        val = F.MUL[c, F.EXP[lg]]
        total = F.ADD[total, val]
    return total


def _split(polys, n):
    """Monomial change of variables separating off the torus factor.

    Returns (d, reduced polys in d variables, Ainv) where the substitution
    X_i = ∏_j Y_j^{Ainv[i][j]} makes every (shifted) poly involve Y_1…Y_d only.
    """
    shifted = []
    diffs = []
    for f in polys:
        sup = f.support()
        a0 = sup[0]
        shifted.append(f.shift([-x for x in a0]))
        diffs.extend(tuple(x - y for x, y in zip(e, a0)) for e in sup[1:])
    diffs = [v for v in diffs if any(v)]
    if not diffs:
        return 0, [LaurentPolynomial.constant(0, g.coeffs[(0,) * n]) for g in shifted], [[int(i == j) for j in range(n)] for i in range(n)]
    Lb, A = saturate_and_complete(diffs, n)
    d = Lb.rank
    Ainv = int_inverse(A)
    red = []
    for g in shifted:
        co = {}
        for e, c in g.coeffs.items():
            y = [sum(e[i] * Ainv[i][j] for i in range(n)) for j in range(n)]
            assert not any(y[d:])
            co[tuple(y[:d])] = c
        red.append(LaurentPolynomial(d, co))
    return d, red, Ainv


def _points_logs(q, d, start=0, stop=None):
    """Discrete-log coordinates of all torus points, lexicographic."""
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q - 1,) * d).reshape(d, -1).T.astype(np.int64)
    return grids


def torus_count(keep, avoid, q, n=None, split=True):
    """#{u ∈ (𝔽_q^×)^n : all keep vanish, no avoid vanishes}."""
    keep, avoid = list(keep), list(avoid)
    if n is None:
        n = (keep + avoid)[0].n if keep + avoid else 0
    p, e = _prime_power(q)
    polys = keep + avoid
    if not polys:
        return (q - 1) ** n
    F = GF(p, e)
    if split and polys:
        d, red, _ = _split(polys, n)
    else:
        d, red = n, [f.shift([-x for x in f.monomial_part()]) if f else f for f in polys]
    if (q - 1) ** d > 50 * ENUM_BUDGET:
        raise TooLarge(f"torus enumeration of size {(q - 1) ** d}", q=q, dim=d)
    L = _points_logs(q, d)
    mask = np.ones(L.shape[0], dtype=bool)
    for i, g in enumerate(red):
        ex, cs = _reduce(g, F)
        vals = _eval_logs(F, ex, cs, L) if ex else np.zeros(L.shape[0], dtype=np.int64)
        mask &= (vals == 0) if i < len(keep) else (vals != 0)
    return int(mask.sum()) * (q - 1) ** (n - d)


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


# ------------------------------------------------------- non-degeneracy

@dataclass(frozen=True)
class Witness:
    face: int
    subset: tuple
    point: tuple
    field: str
    p: int
    e: int
    weight: tuple = ()

    def to_dict(self):
        return {"face": self.face, "subset": list(self.subset), "point": list(self.point),
                "field": self.field, "weight": list(self.weight)}


@dataclass(frozen=True)
class NondegVerdict:
    status: str  # "CertifiedYes" | "LikelyYes" | "WitnessNo"
    witnesses: tuple = ()
    searched: tuple = ()
    bad_primes: tuple = ()
    notes: tuple = ()

    @property
    def witness(self):
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self):
        d = {"status": self.status, "searched": [list(s) for s in self.searched],
             "bad_primes": list(self.bad_primes)}
        if self.witnesses:
            d["witness"] = self.witnesses[0].to_dict()
            d["witnesses"] = [w.to_dict() for w in self.witnesses]
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def is_degenerate_point(polys, u, F: GF):
    """True if all polys vanish at u and their Jacobian has rank < len(polys)."""
    if any(F.evaluate(f, u) for f in polys):
        return False
    n = len(u)
    J = [[F.evaluate(f.derivative(i), u) for i in range(n)] for f in polys]
    return F.rank(J) < len(polys)


def _binomial_status(polys):
    """'vacuous', 'certified', 'degenerate' or None for a non-binomial system."""
    if any(f.num_terms() != 2 for f in polys):
        return None
    deltas, ratios = [], []
    for f in polys:
        (a, ca), (b, cb) = sorted(f.coeffs.items())
        deltas.append([x - y for x, y in zip(a, b)])
        ratios.append(-cb / ca)  # X^δ = ratio
    if rank(deltas) == len(polys):
        return "certified"
    # torus solutions exist iff ∏ ratio_j^λ_j = 1 for all integer relations λ
    rels = nullspace([list(r) for r in zip(*deltas)], len(polys))
    rels = [list(v) for v in saturate_and_complete(rels, len(polys))[0].basis_vectors]
    for lam in rels:
        v = Fraction(1)
        for r, k in zip(ratios, lam):
            v *= r ** k
        if v != 1:
            return "vacuous"
    return "degenerate"


def _search_system(polys, n, F: GF, budget):
    """First torus point over F where polys vanish with deficient Jacobian.

    Returns (point in original coordinates | None, enumerated?)"""
    d, red, Ainv = _split(polys, n)
    q = F.q
    if (q - 1) ** d > budget:
        return None, False
    reds = []
    for g in red:
        ex, cs = _reduce(g, F)
        if not ex:
            return None, True  # a nonzero constant: no zeros
        reds.append((ex, cs))
    L = _points_logs(q, d)
    mask = np.ones(L.shape[0], dtype=bool)
    for ex, cs in reds:
        mask &= _eval_logs(F, ex, cs, L) == 0
    idx = np.nonzero(mask)[0]
    if not len(idx):
        return None, True
    k = len(polys)
    # Jacobian in Y-coordinates: ∂g/∂Y_i = Σ c α_i Y^{α−e_i}
    parts = []
    for g in red:
        row = []
        for i in range(d):
            row.append(_reduce(g.derivative(i), F) if g.derivative(i) else ([], []))
        parts.append(row)
    Lz = L[idx]
    if k == 1:
        allzero = np.ones(len(idx), dtype=bool)
        for ex, cs in parts[0]:
            if ex:
                allzero &= _eval_logs(F, ex, cs, Lz) == 0
        hits = np.nonzero(allzero)[0]
    else:
        vals = [[(_eval_logs(F, ex, cs, Lz) if ex else np.zeros(len(idx), dtype=np.int64)) for ex, cs in row]
                for row in parts]
        hits = []
        for t in range(min(len(idx), 20000)):
            M = [[int(vals[j][i][t]) for i in range(d)] for j in range(k)]
            if F.rank(M) < k:
                hits = [t]
                break
    if not len(hits):
        return None, True
    ylog = [int(x) for x in Lz[hits[0]]] + [0] * (n - d)
    # X_i = ∏_j Y_j^{Ainv[i][j]} realizes X^α = Y^{α·Ainv}
    xlog = [sum(Ainv[i][j] * ylog[j] for j in range(n)) % (q - 1) for i in range(n)]
    u = tuple(int(F.EXP[x]) for x in xlog)
    return u, True


def _bad_primes(polys):
    out = set()
    for f in polys:
        for c in f.coeffs.values():
            for x in (c.numerator, c.denominator):
                out.update(_prime_factors(abs(x)) if abs(x) > 1 else [])
    return out


def _pending_systems(members, weighted):
    """Non-binomial subsystems of initial forms, with their face index."""
    pending = []
    for fid, w in weighted:
        inits = [f.initial_form(w) for f in members]
        live = [i for i, g in enumerate(inits) if not g.is_monomial()]
        for r in range(1, len(live) + 1):
            for J in combinations(live, r):
                polys = [inits[i] for i in J]
                if _binomial_status(polys) not in ("certified", "vacuous"):
                    pending.append((fid, tuple(w), J, polys))
    return pending


def _search_fields(pending, n, fields):
    """Scan fields until two characteristics yield degenerate points."""
    searched, witnesses, chars = [], [], set()
    skipped = False
    for p, e in fields:
        if p in chars:
            continue
        try:
            F = GF(p, e)
        except TooLarge:
            continue
        for fid, w, J, polys in pending:
            u, done = _search_system(polys, n, F, ENUM_BUDGET)
            if not done:
                skipped = True
            if u is not None:
                assert is_degenerate_point(polys, u, F), "witness failed re-verification"
                witnesses.append(Witness(fid, tuple(J), u, F.name, p, e, w))
                chars.add(p)
                break
        searched.append((p, e))
        if len(chars) >= 2:
            break
    return witnesses, searched, chars, skipped


def _policy_fields(policy, bad):
    policy = dict(DEFAULT_POLICY, **(policy or {}))
    primes = [p for p in policy["primes"] if p not in bad]
    return [(p, e) for e in range(1, policy["max_degree"] + 1) for p in primes]


def probe_weights(C0: HalfOpenCone, count=PROBE_COUNT, seed=0):
    """Integer points of C0 built from its rays, found without any polytope."""
    import random

    rng = random.Random(seed)
    n = C0.ambient_dim
    try:
        K = closed_cone(C0)
        rays = [K.ambient_ray(i) for i in range(len(K.rays))]
    except NotPointed:
        rays = [tuple(s * int(i == j) for j in range(n)) for i in range(n) for s in (1, -1)]
    if is_empty(C0)[0]:
        return []
    cands = [tuple(integer_witness(C0))] + rays
    for _ in range(8 * count):
        if not rays:
            break
        pick = rng.sample(rays, rng.randint(1, len(rays)))
        cands.append(tuple(sum(rng.randint(1, 3) * r[i] for r in pick) for i in range(n)))
    out, seen = [], set()
    for w in cands:
        w = tuple(int(x) for x in w)
        if w not in seen and C0.contains(w):
            seen.add(w)
            out.append(w)
            if len(out) == count:
                break
    return out


def probe_degeneracy(family: PolyFamily, C0: HalfOpenCone = None, policy=None):
    """WitnessNo verdict from sampled weights in C0, or None.

    Cheap refusal for families whose Newton polytope is too costly to
    enumerate; a None result says nothing about non-degeneracy.
    """
    C0 = whole_space(family.n) if C0 is None else C0
    bad = _bad_primes(family.members)
    pending = _pending_systems(family.members, [(None, w) for w in probe_weights(C0)])
    if not pending:
        return None
    pending.sort(key=lambda t: len(t[3]))
    witnesses, searched, chars, _ = _search_fields(pending, family.n, _policy_fields(policy, bad))
    if len(chars) >= 2:
        return NondegVerdict("WitnessNo", tuple(witnesses), tuple(searched), tuple(sorted(bad)),
                             ("found at sampled weights",))
    return None


def nondegeneracy_check(family: PolyFamily, C0: HalfOpenCone = None, policy=None, faces=None):
    """Three-valued non-degeneracy verdict relative to C0 (whole space if None)."""
    n = family.n
    if C0 is None:
        C0 = whole_space(n)
    if faces is None:
        faces = visible_newton_faces(family, C0)
    members = family.members
    bad = _bad_primes(members)
    pending = _pending_systems(members, [(face.index, face.witness) for face in faces])
    if not pending:
        return NondegVerdict("CertifiedYes", (), (), tuple(sorted(bad)))
    witnesses, searched, chars, skipped = _search_fields(pending, n, _policy_fields(policy, bad))
    if len(chars) >= 2:
        return NondegVerdict("WitnessNo", tuple(witnesses), tuple(searched), tuple(sorted(bad)))
    notes = []
    if witnesses:
        notes.append("degenerate points found in a single characteristic only")
    if skipped:
        notes.append("some systems exceeded the enumeration budget over larger fields")
    return NondegVerdict("LikelyYes", tuple(witnesses), tuple(searched), tuple(sorted(bad)), tuple(notes))
