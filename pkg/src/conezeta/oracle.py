"""Brute-force ground truth: sublattice counting by Hermite forms, solution
counts of congruences and truncated lattice-point sums over cones."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd

import numpy as np

from .errors import TooLarge
from .laurent import LaurentPolynomial
from .polyhedra import HalfOpenCone, closed_cone, is_empty
from .ratfun import TermSum, power_series_coeffs

HERMITE_LIMIT = 10 ** 7
CONGRUENCE_LIMIT = 10 ** 8


@dataclass
class CountTable:
    mode: str
    p: int
    counts: list = field(default_factory=list)  # counts[k] = a_{p^k}

    @property
    def exponents(self):
        return list(range(len(self.counts)))

    def to_dict(self):
        return {"mode": self.mode, "p": self.p, "counts": [int(c) for c in self.counts]}


# ------------------------------------------------------------- sublattices

def _compositions(k, d):
    """Exponent vectors (a_1..a_d) with sum k."""
    if d == 1:
        yield (k,)
        return
    for a in range(k + 1):
        for rest in _compositions(k - a, d - 1):
            yield (a,) + rest


def hermite_form_count(d, p, k):
    """Number of sublattices of index p^k in ℤᵈ (the Hermite forms)."""
    total = 0
    for a in _compositions(k, d):
        m = 1
        for j in range(d):
            m *= (p ** a[j]) ** j
        total += m
    return total


def hermite_forms(d, p, k):
    """Upper triangular bases: diagonal p^{a_i}, entries above the diagonal
    reduced modulo the diagonal entry of their column."""
    for a in _compositions(k, d):
        diag = [p ** x for x in a]
        slots = [(i, j) for j in range(d) for i in range(j)]
        for vals in product(*[range(diag[j]) for (_, j) in slots]):
            H = [[0] * d for _ in range(d)]
            for i in range(d):
                H[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                H[i][j] = v
            yield H


def _member(H, v):
    """Is the rational row vector v an integer combination of the rows of H?"""
    d = len(H)
    v = list(v)
    for i in range(d):
        x = Fraction(v[i]) / H[i][i]
        if x.denominator != 1:
            return False
        if x:
            for j in range(i, d):
                v[j] -= x * H[i][j]
    return True


def _closure_vectors(A, H):
    d = A.rank
    if A.mode == "module":
        for g in A.generators:
            for row in H:
                yield [sum(row[k] * g[k][j] for k in range(d)) for j in range(d)]
        return
    if A.mode == "subalgebra":
        for m in range(d):
            for k in range(m if A.kind == "lie" else 0, d):
                yield A.product(H[m], H[k])
        return
    basis = [[int(i == j) for j in range(d)] for i in range(d)]
    for a in range(d):
        for row in H:
            yield A.product(basis[a], row)
            if A.kind != "lie":
                yield A.product(row, basis[a])


def sublattice_counts(A, p, kmax):
    """a_{p^k} for k = 0..kmax by direct enumeration of Hermite forms."""
    d = A.rank
    total = sum(hermite_form_count(d, p, k) for k in range(kmax + 1))
    if total > HERMITE_LIMIT:
        raise TooLarge(f"{total} Hermite forms exceed the limit", count=total, limit=HERMITE_LIMIT)
    counts = []
    for k in range(kmax + 1):
        c = 0
        for H in hermite_forms(d, p, k):
            if all(_member(H, v) for v in _closure_vectors(A, H)):
                c += 1
        counts.append(c)
    return CountTable(A.mode, p, counts)


def all_sublattices_series(d, p, kmax):
    """Coefficients of ζ_p(s)ζ_p(s−1)⋯ζ_p(s−d+1) in p^{−s}."""
    coeffs = [1] + [0] * kmax
    for i in range(d):
        # multiply by 1/(1 − p^i T)
        for k in range(1, kmax + 1):
            coeffs[k] += p ** i * coeffs[k - 1]
    return coeffs


# -------------------------------------------------------------- congruences

def _integral_coeffs(f: LaurentPolynomial, p):
    den = 1
    for c in f.coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    if den % p == 0:
        raise ValueError(f"coefficients of f are not {p}-integral")
    return [(e, int(c * den)) for e, c in f.coeffs.items()]


def _eval_mod(terms, X, mod):
    """f(X) mod ``mod`` for an (N, n) int64 array of points."""
    out = np.zeros(X.shape[0], dtype=np.int64)
    for e, c in terms:
        v = np.full(X.shape[0], c % mod, dtype=np.int64)
        for i, k in enumerate(e):
            for _ in range(k):
                v = (v * X[:, i]) % mod
        out = (out + v) % mod
    return out


def congruence_counts(f: LaurentPolynomial, p, kmax):
    """N_k = #{x mod p^k : f(x) ≡ 0 mod p^k} by lifting solutions."""
    n = f.n
    if any(x < 0 for e in f.coeffs for x in e):
        raise ValueError("congruence counts need a polynomial")
    if p ** (kmax * n) > CONGRUENCE_LIMIT:
        raise TooLarge(f"p^(k·n) = {p ** (kmax * n)} exceeds the limit", limit=CONGRUENCE_LIMIT)
    terms = _integral_coeffs(f, p)
    counts = [1]
    sols = np.zeros((1, n), dtype=np.int64)
    mod = 1
    lifts = np.array(list(product(range(p), repeat=n)), dtype=np.int64)
    for k in range(1, kmax + 1):
        X = (sols[:, None, :] + mod * lifts[None, :, :]).reshape(-1, n)
        mod *= p
        sols = X[_eval_mod(terms, X, mod) == 0]
        counts.append(len(sols))
    return CountTable("congruence", p, counts)


def poincare_from_igusa(Z: TermSum, p, n, kmax):
    """Coefficients of (1 − T·Z(T))/(1 − T) with T = p^{−s}; the k-th one
    should equal N_k p^{−nk}."""
    z = power_series_coeffs(Z, kmax, p)
    b = [Fraction(1)] + [-z[j - 1] for j in range(1, kmax + 1)]
    out = []
    acc = Fraction(0)
    for x in b:
        acc += x
        out.append(acc)
    return out


def check_igusa_identity(f: LaurentPolynomial, Z: TermSum, p, kmax):
    """(ok, N_k, predicted) for the congruence identity at p."""
    table = congruence_counts(f, p, kmax)
    pred = poincare_from_igusa(Z, p, f.n, kmax)
    obs = [Fraction(N, p ** (f.n * k)) for k, N in enumerate(table.counts)]
    return obs == pred, table, pred


# ---------------------------------------------------------- cone partial sums

def _box_bound(C: HalfOpenCone, B):
    K = closed_cone(C, relax=True)
    bound = 0
    for i in range(len(K.rays)):
        r = K.ambient_ray(i)
        g = sum(r)
        if g <= 0:
            raise ValueError("grading is not positive on the cone")
        bound = max(bound, max(abs(Fraction(B * x, g)) for x in r))
    return int(bound)


def cone_lattice_points(C: HalfOpenCone, B):
    """ω ∈ C ∩ ℤⁿ with ⟨1,ω⟩ ≤ B."""
    if is_empty(C)[0]:
        return []
    R = _box_bound(C, B)
    n = C.ambient_dim
    return [w for w in product(range(-R, R + 1), repeat=n) if sum(w) <= B and C.contains(w)]


def cone_partial_sum(C: HalfOpenCone, A, B, point):
    """Σ over lattice points ω of C with ⟨1,ω⟩ ≤ B of point^{ωA}."""
    total = Fraction(0)
    for w in cone_lattice_points(C, B):
        img = [sum(w[i] * A[i][k] for i in range(len(w))) for k in range(len(A[0]))]
        v = Fraction(1)
        for x, e in zip(point, img):
            v *= Fraction(x) ** e
        total += v
    return total


def level_counts(C: HalfOpenCone, B):
    """Number of lattice points of C on each level ⟨1,ω⟩ = 0..B."""
    out = [0] * (B + 1)
    for w in cone_lattice_points(C, B):
        if sum(w) >= 0:
            out[sum(w)] += 1
    return out
