"""Exact integer and rational linear algebra.

Matrices are plain lists of rows holding Python ints (or Fractions where
noted).  Nothing here ever falls back to floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

IntMatrix = list  # list[list[int]]


@dataclass(frozen=True)
class LatticeBasis:
    ambient_dim: int
    basis_vectors: tuple

    @property
    def rank(self):
        return len(self.basis_vectors)


# ---------------------------------------------------------------- basics

def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def mat_mul(A, B):
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vec_mat(v, M):
    """Row vector times matrix."""
    if not M:
        return []
    return [sum(v[i] * M[i][j] for i in range(len(v)) if v[i]) for j in range(len(M[0]))]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v):
    """Divide an integer (or rational) vector by its content."""
    if any(isinstance(x, Fraction) for x in v):
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        v = [int(x * den) for x in v]
    g = content(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def det(M):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i = A[i]
            row_k = A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def row_echelon(M):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    A = [[Fraction(x) for x in r] for r in M]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M):
    """Rank over Q.  Uses modular-free integer elimination."""
    A = [list(r) for r in M if any(r)]
    if not A:
        return 0
    rk = 0
    ncols = len(A[0])
    for c in range(ncols):
        p = next((i for i in range(rk, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[rk], A[p] = A[p], A[rk]
        piv = A[rk]
        for i in range(rk + 1, len(A)):
            a = A[i][c]
            if a:
                b = piv[c]
                A[i] = [x * b - y * a for x, y in zip(A[i], piv)]
                g = content(A[i])
                if g > 1:
                    A[i] = [x // g for x in A[i]]
        rk += 1
        if rk == len(A):
            break
    return rk


def nullspace(M, n=None):
    """Integer basis of {x : M x = 0} (rational kernel, primitive vectors)."""
    if n is None:
        n = len(M[0]) if M else 0
    if not M:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    R, piv = row_echelon(M)
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(R, piv):
            x[pc] = -row[f]
        out.append(primitive(x))
    return out


def solve_rational(M, b):
    """Some rational x with x·M = b (row vector convention), or None."""
    # x M = b  <=>  M^T x^T = b^T
    k = len(M)
    if k == 0:
        return [] if not any(b) else None
    n = len(M[0])
    aug = [[Fraction(M[i][j]) for i in range(k)] + [Fraction(b[j])] for j in range(n)]
    R, piv = row_echelon(aug)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for row, pc in zip(R, piv):
        x[pc] = row[k]
    return x


def inverse(M):
    """Inverse over Q (Fractions)."""
    n = len(M)
    aug = [[Fraction(x) for x in M[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = row_echelon(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def int_inverse(M):
    """Inverse of a unimodular integer matrix."""
    inv = inverse(M)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def _xgcd(a, b):
    """Return (g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ----------------------------------------------------------- normal forms

def _elim_coeffs(a, b):
    # unimodular 2x2 (x, y; c, d) sending (a, b) to (gcd, 0)
    if b % a == 0:
        return 1, 0, -(b // a), 1
    g, x, y = _xgcd(a, b)
    return x, y, -b // g, a // g


def smith_normal_form(M):
    """Smith normal form with unimodular witnesses.

    Args:
        M: integer matrix with m rows and n columns.

    Returns:
        (S, U, V) with U·M·V = S, S diagonal and s_1 | s_2 | ... .
    """
    m = len(M)
    n = len(M[0]) if m else 0
    S = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def row_comb(A, i, j, a, b, c, d):
        # rows (i, j) <- (a*ri + b*rj, c*ri + d*rj)
        ri, rj = A[i], A[j]
        A[i] = [a * x + b * y for x, y in zip(ri, rj)]
        A[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_comb(A, i, j, a, b, c, d):
        for r in A:
            x, y = r[i], r[j]
            r[i] = a * x + b * y
            r[j] = c * x + d * y

    t = 0
    while t < min(m, n):
        # choose a pivot of least absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        S[t], S[i] = S[i], S[t]
        U[t], U[i] = U[i], U[t]
        for r in S:
            r[t], r[j] = r[j], r[t]
        for r in V:
            r[t], r[j] = r[j], r[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t]:
                    a, b = S[t][t], S[i][t]
                    co = _elim_coeffs(a, b)
                    row_comb(S, t, i, *co)
                    row_comb(U, t, i, *co)
                    changed = True
            for j in range(t + 1, n):
                if S[t][j]:
                    a, b = S[t][t], S[t][j]
                    co = _elim_coeffs(a, b)
                    col_comb(S, t, j, *co)
                    col_comb(V, t, j, *co)
                    changed = True
            if not changed:
                break
        piv = S[t][t]
        # enforce divisibility of the rest of the block
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % piv:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            S[t] = [x + y for x, y in zip(S[t], S[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
            continue
        if piv < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return S, U, V


def _row_hnf(M):
    """Row-style upper Hermite form: U·M = H, pivots positive, entries above
    each pivot reduced into [0, pivot).  Zero rows are kept at the bottom."""
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(r) for r in M]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        rows = [i for i in range(r, m) if H[i][c]]
        if not rows:
            continue
        p = rows[0]
        H[r], H[p] = H[p], H[r]
        U[r], U[p] = U[p], U[r]
        for i in range(r + 1, m):
            if H[i][c]:
                a, b = H[r][c], H[i][c]
                g, x, y = _xgcd(a, b)
                hr, hi = H[r], H[i]
                ur, ui = U[r], U[i]
                H[r] = [x * s + y * t for s, t in zip(hr, hi)]
                H[i] = [(-b // g) * s + (a // g) * t for s, t in zip(hr, hi)]
                U[r] = [x * s + y * t for s, t in zip(ur, ui)]
                U[i] = [(-b // g) * s + (a // g) * t for s, t in zip(ur, ui)]
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            k = H[i][c] // piv
            if k:
                H[i] = [s - k * t for s, t in zip(H[i], H[r])]
                U[i] = [s - k * t for s, t in zip(U[i], U[r])]
        r += 1
    return H, U


def hermite_normal_form(M):
    """Lower-triangular column-style Hermite form.

    The lattice is the column span of M.  Returns (H, U) with M·U = H; the
    unimodular transform acts on the right because column operations are
    what preserve a column lattice.  Off-diagonal entries are reduced into
    [0, h_ii) where h_ii is the pivot of their row.
    """
    Mt = transpose(M, len(M[0]) if M else 0) if M else []
    Ht, Ut = _row_hnf(Mt)
    ncols = len(M)
    return transpose(Ht, ncols) if Ht else [[] for _ in range(ncols)], transpose(Ut, len(Ut)) if Ut else []


def row_hermite(M):
    """Row-style upper Hermite form of the row lattice of M (zero rows dropped)."""
    H, _ = _row_hnf(M)
    return [r for r in H if any(r)]


def saturate_and_complete(vectors, n=None):
    """Saturated basis of the rational span of ``vectors`` plus a completion.

    Returns (basis, A) where A is unimodular, its first d rows are the
    Hermite-reduced saturated basis, and for v in the span the row vector
    v·A⁻¹ is supported on the first d coordinates.
    """
    vectors = [list(v) for v in vectors]
    if n is None:
        if not vectors:
            raise ValueError("ambient dimension needed for empty input")
        n = len(vectors[0])
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return LatticeBasis(n, ()), identity(n)
    S, U, V = smith_normal_form(vectors)
    r = sum(1 for i in range(min(len(S), n)) if S[i][i])
    Vinv = int_inverse(V)
    sat = row_hermite(Vinv[:r])
    A = [list(x) for x in sat] + [list(x) for x in Vinv[r:]]
    return LatticeBasis(n, tuple(tuple(v) for v in sat)), A


# -------------------------------------------------------------- feasibility

def feasible_point(closed_ineqs, strict_ineqs, equations=(), n=None):
    """Exact feasibility of a homogeneous system.

    Looks for ω with ⟨a,ω⟩ ≥ 0 (closed), ⟨b,ω⟩ ≥ 1 (strict) and ⟨e,ω⟩ = 0.
    By homogeneity the strict rows are equivalent to ``> 0``.  Returns a
    list of Fractions or None when the system is empty.
    """
    closed_ineqs = [list(a) for a in closed_ineqs]
    strict_ineqs = [list(b) for b in strict_ineqs]
    equations = [list(e) for e in equations]
    if n is None:
        for rows in (closed_ineqs, strict_ineqs, equations):
            if rows:
                n = len(rows[0])
                break
        else:
            return []
    if not strict_ineqs:
        return [Fraction(0)] * n
    # parametrize the solution space of the equations by an integer basis
    K = nullspace(equations, n) if equations else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    k = len(K)
    if k == 0:
        return None

    def proj(a):
        return [sum(a[i] * row[i] for i in range(n)) for row in K]

    cl = [proj(a) for a in closed_ineqs]
    st = [proj(b) for b in strict_ineqs]
    if any(not any(b) for b in st):
        return None
    cl = [a for a in cl if any(a)]
    y = _phase_one(cl, st, k)
    if y is None:
        return None
    w = [sum(y[j] * K[j][i] for j in range(k)) for i in range(n)]
    return w


def _phase_one(closed, strict, k):
    """Phase-one simplex (Bland's rule) for a·y ≥ 0, b·y ≥ 1 with y free."""
    rows = [(a, 0) for a in closed] + [(b, 1) for b in strict]
    m = len(rows)
    # columns: u(k), v(k), slack(m), artificial(m); y = u - v
    ncol = 2 * k + 2 * m
    T = []
    for i, (a, rhs) in enumerate(rows):
        row = [Fraction(0)] * (ncol + 1)
        for j in range(k):
            row[j] = Fraction(a[j])
            row[k + j] = Fraction(-a[j])
        row[2 * k + i] = Fraction(-1)
        row[2 * k + m + i] = Fraction(1)
        row[ncol] = Fraction(rhs)
        T.append(row)
    basis = [2 * k + m + i for i in range(m)]
    # objective: minimize sum of artificials -> reduced costs
    obj = [Fraction(0)] * (ncol + 1)
    for row in T:
        for j in range(ncol + 1):
            obj[j] -= row[j]
    for i in range(m):
        obj[2 * k + m + i] = Fraction(0)
    while True:
        enter = next((j for j in range(ncol) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][ncol] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur for phase one (objective >= 0)
            break
        prow = T[leave]
        inv = 1 / prow[enter]
        prow = [x * inv for x in prow]
        T[leave] = prow
        nz = [j for j in range(ncol + 1) if prow[j]]
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    r = T[i]
                    for j in nz:
                        r[j] -= f * prow[j]
        f = obj[enter]
        for j in nz:
            obj[j] -= f * prow[j]
        basis[leave] = enter
    if obj[ncol] != 0:
        return None
    x = [Fraction(0)] * ncol
    for i, b in enumerate(basis):
        x[b] = T[i][ncol]
    return [x[j] - x[k + j] for j in range(k)]
