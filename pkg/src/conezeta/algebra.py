"""From structure constants to cone-integral data for subalgebra, ideal and
submodule zeta functions, plus a small catalog of example presentations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import InvalidInput, NotUnimodular
from .exactlinalg import det, int_inverse, solve_rational
from .laurent import LaurentPolynomial
from .newton import PolyFamily, _prime_factors
from .polyhedra import HalfOpenCone, intersect_halfopen, is_empty, orthant
from .zeta import IntegralData

KINDS = ("general", "lie", "associative")
MODES = ("subalgebra", "ideal", "module")


@dataclass
class AlgebraPresentation:
    """e_i·e_j = Σ_k c[i][j][k] e_k, or (module mode) matrices acting on
    row vectors of ℤᵈ from the right."""

    rank: int
    structure_constants: list = None
    kind: str = "general"
    mode: str = "subalgebra"
    generators: list = None
    name: str = ""

    def __post_init__(self):
        d = self.rank
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown kind {self.kind!r}")
        if self.mode not in MODES:
            raise InvalidInput(f"unknown mode {self.mode!r}")
        if self.mode == "module":
            if not self.generators:
                raise InvalidInput("module mode needs generator matrices")
            self.generators = [[[Fraction(x) for x in row] for row in g] for g in self.generators]
            for g in self.generators:
                if len(g) != d or any(len(r) != d for r in g):
                    raise InvalidInput("generator matrices must be rank×rank")
            return
        c = self.structure_constants
        if c is None or len(c) != d or any(len(ci) != d or any(len(cij) != d for cij in ci) for ci in c):
            raise InvalidInput("structure constants must be a rank×rank×rank array")
        self.structure_constants = [[[Fraction(x) for x in cij] for cij in ci] for ci in c]
        c = self.structure_constants
        if self.kind == "lie":
            for i in range(d):
                for j in range(d):
                    for k in range(d):
                        if c[i][j][k] != -c[j][i][k]:
                            raise InvalidInput(f"not antisymmetric at ({i},{j},{k})")

    def product(self, a, b):
        """Product of two coordinate vectors (entries may be Laurent polys)."""
        d = self.rank
        c = self.structure_constants
        out = [0] * d
        for i in range(d):
            if not _nonzero(a[i]):
                continue
            for j in range(d):
                if not _nonzero(b[j]):
                    continue
                ab = a[i] * b[j]
                for k in range(d):
                    if c[i][j][k]:
                        out[k] = out[k] + ab * c[i][j][k]
        return out

    def to_json(self):
        d = {"rank": self.rank, "kind": self.kind, "mode": self.mode}
        if self.name:
            d["name"] = self.name
        if self.mode == "module":
            d["generators"] = [[[str(x) for x in r] for r in g] for g in self.generators]
        else:
            d["structure_constants"] = [[[str(x) for x in cij] for cij in ci] for ci in self.structure_constants]
        return d

    @classmethod
    def from_json(cls, obj):
        allowed = {"rank", "kind", "mode", "structure_constants", "generators", "name"}
        extra = set(obj) - allowed
        if extra:
            raise InvalidInput(f"unknown keys {sorted(extra)}")
        if "rank" not in obj:
            raise InvalidInput("missing rank")
        conv = lambda a: [conv(x) for x in a] if isinstance(a, list) else Fraction(str(a))
        sc = conv(obj["structure_constants"]) if "structure_constants" in obj else None
        gens = conv(obj["generators"]) if "generators" in obj else None
        return cls(int(obj["rank"]), sc, obj.get("kind", "general"), obj.get("mode", "subalgebra"),
                   gens, obj.get("name", ""))


def _nonzero(x):
    return bool(x)


def from_matrix_basis(mats, kind="lie", mode="subalgebra", name=""):
    """Structure constants of the span of integer matrices under the
    commutator (lie) or matrix product (associative)."""
    d = len(mats)
    k = len(mats[0])
    flat = [[x for row in M for x in row] for M in mats]

    def mul(A, B):
        return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(k)] for i in range(k)]

    c = []
    for i in range(d):
        ci = []
        for j in range(d):
            P = mul(mats[i], mats[j])
            if kind == "lie":
                Q = mul(mats[j], mats[i])
                P = [[P[r][s] - Q[r][s] for s in range(k)] for r in range(k)]
            coords = solve_rational(flat, [x for row in P for x in row])
            if coords is None:
                raise InvalidInput("matrix span is not closed under the product")
            ci.append(list(coords))
        c.append(ci)
    return AlgebraPresentation(d, c, kind, mode, name=name)


def change_basis(A: AlgebraPresentation, U):
    """Presentation in the basis e'_i = Σ_j U[i][j] e_j (U unimodular)."""
    d = A.rank
    U = [[int(x) for x in row] for row in U]
    if abs(det(U)) != 1:
        raise NotUnimodular("basis change must be unimodular")
    Ui = int_inverse(U)
    if A.mode == "module":
        # action matrices in the new coordinates of ℤᵈ
        gens = []
        for g in A.generators:
            # rows act by v ↦ v·g; new coordinates v' = v·U⁻¹
            gens.append(_mm(_mm(U, g), Ui))
        return AlgebraPresentation(d, None, A.kind, "module", gens, A.name)
    new = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            prod = A.product([Fraction(x) for x in U[i]], [Fraction(x) for x in U[j]])
            new[i][j] = [sum(prod[t] * Ui[t][k] for t in range(d)) for k in range(d)]
    return AlgebraPresentation(d, new, A.kind, A.mode, name=A.name)


def _mm(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


# ------------------------------------------------------- the construction

def variable_index(d):
    """(i, j) ↦ position of x_ij (i ≤ j) in x11, x12, …, x1d, x22, …"""
    idx = {}
    for i in range(d):
        for j in range(i, d):
            idx[(i, j)] = len(idx)
    return idx


def symbolic_matrix(d):
    idx = variable_index(d)
    n = len(idx)
    zero = LaurentPolynomial(n)
    C = [[zero] * d for _ in range(d)]
    for (i, j), k in idx.items():
        C[i][j] = LaurentPolynomial.variable(n, k)
    return C, n


def upper_inverse(C):
    """Inverse of an upper triangular matrix of Laurent polynomials whose
    diagonal entries are monomials."""
    d = len(C)
    n = C[0][0].n
    zero = LaurentPolynomial(n)
    Inv = [[zero] * d for _ in range(d)]
    for i in range(d - 1, -1, -1):
        inv_ii = C[i][i] ** -1
        Inv[i][i] = inv_ii
        for j in range(i + 1, d):
            acc = zero
            for k in range(i + 1, j + 1):
                if C[i][k] and Inv[k][j]:
                    acc = acc + C[i][k] * Inv[k][j]
            Inv[i][j] = -(inv_ii * acc) if acc else zero
    return Inv


def _row_times(w, M):
    d = len(M)
    n = M[0][0].n
    out = []
    for j in range(d):
        acc = LaurentPolynomial(n)
        for k in range(d):
            if _nonzero(w[k]) and M[k][j]:
                acc = acc + w[k] * M[k][j]
        out.append(acc)
    return out


def condition_vectors(A: AlgebraPresentation, C):
    """Row vectors w whose coordinates w·C⁻¹ must be integral."""
    d = A.rank
    n = C[0][0].n
    ws = []
    if A.mode == "module":
        for g in A.generators:
            for m in range(d):
                ws.append([sum((C[m][k] * g[k][j] for k in range(d) if g[k][j]), LaurentPolynomial(n))
                           for j in range(d)])
        return ws
    basis = [[LaurentPolynomial.constant(n, int(i == j)) if i == j else LaurentPolynomial(n) for j in range(d)]
             for i in range(d)]
    if A.mode == "subalgebra":
        for m in range(d):
            for k in range(m if A.kind == "lie" else 0, d):
                if A.kind == "lie" and k == m:
                    continue
                ws.append(A.product(C[m], C[k]))
    else:
        for a in range(d):
            for m in range(d):
                ws.append(A.product(basis[a], C[m]))
                if A.kind != "lie":
                    ws.append(A.product(C[m], basis[a]))
    return ws


def _poly_key(f):
    lo = min(f.coeffs)
    g = f.shift([-x for x in lo])
    _, g = g.content_normalized()
    return g, lo


def cone_integral_data(A: AlgebraPresentation, simplify=True):
    """IntegralData whose integral times (1−q⁻¹)^{−d} is the local zeta function."""
    d = A.rank
    C, n = symbolic_matrix(d)
    Cinv = upper_inverse(C)
    mono_rows = []
    polys = []
    bad = set()
    for w in condition_vectors(A, C):
        if not any(_nonzero(x) for x in w):
            continue
        for f in _row_times(w, Cinv):
            if f:
                _note_primes(f, bad)
                if f not in polys:
                    polys.append(f)
    while True:
        mono_rows, polys, changed = _absorb(polys, mono_rows, n, simplify)
        if not changed:
            break
    C0 = _ambient_cone(n, mono_rows)
    out = []
    for f in polys:
        unit, g = f.content_normalized()
        _note_primes(LaurentPolynomial.constant(n, unit), bad)
        if g not in out:
            out.append(g)
    if simplify:
        out = _drop_dominated(out, C0)
    diag = [LaurentPolynomial.variable(n, variable_index(d)[(i, i)]) for i in range(d)]
    fam = PolyFamily([out] + [[x] for x in diag], n)
    spec = (list(range(1, d + 1)), [[1] for _ in range(d)])
    return IntegralData(n, C0, fam, spec, (-d, d), tuple(sorted(bad)), label=A.name)


def _note_primes(f, bad):
    for c in f.coeffs.values():
        for x in (c.numerator, c.denominator):
            if abs(x) > 1:
                bad.update(_prime_factors(abs(x)))


def _ambient_cone(n, rows):
    return intersect_halfopen([orthant(n), HalfOpenCone(n, tuple(rows))], ambient_dim=n)


def _absorb(polys, rows, n, strip):
    """Move monomial conditions into the cone; with ``strip`` also delete
    terms whose valuation is nonnegative on the cone (ultrametric
    inequality), which can turn further conditions into monomials."""
    rows = list(rows)
    changed = False
    C0 = _ambient_cone(n, rows)
    keep = []
    for f in polys:
        if strip and not f.is_monomial():
            co = {e: c for e, c in f.coeffs.items() if not _nonneg_on(e, C0)}
            if len(co) < len(f.coeffs):
                changed = True
                if not co:
                    continue
                f = LaurentPolynomial(n, co)
        if f.is_monomial():
            (e,) = f.coeffs
            if any(e) and tuple(e) not in rows:
                rows.append(tuple(e))
                changed = True
            continue
        if f not in keep:
            keep.append(f)
    return rows, keep, changed


def _nonneg_on(e, C0):
    if all(x >= 0 for x in e):
        return True
    neg = intersect_halfopen([C0, HalfOpenCone(C0.ambient_dim, (), (tuple(-x for x in e),))])
    return is_empty(neg)[0]


def _drop_dominated(polys, C0):
    """Remove f = μ·f' when ν(μ) ≥ 0 on C0 and f' is kept."""
    keyed = [(_poly_key(f), f) for f in polys]
    drop = set()
    for i, ((gi, li), fi) in enumerate(keyed):
        for j, ((gj, lj), fj) in enumerate(keyed):
            if i == j or j in drop or gi != gj:
                continue
            mu = tuple(a - b for a, b in zip(li, lj))  # f_i = μ f_j up to a unit
            if not any(mu):
                continue
            neg = intersect_halfopen([C0, HalfOpenCone(C0.ambient_dim, (), (tuple(-x for x in mu),))])
            if is_empty(neg)[0]:
                drop.add(i)
                break
    return [f for i, f in enumerate(polys) if i not in drop]


def zeta_data(A: AlgebraPresentation):
    return cone_integral_data(A)


# ---------------------------------------------------------------- catalog

def zero_algebra(d):
    return AlgebraPresentation(d, [[[0] * d for _ in range(d)] for _ in range(d)], "general",
                               name=f"Z^{d}")


def _bilinear_algebra(B, kind, name):
    """𝓑(β): M ⊕ ℤ with (x,a)(y,b) = (0, β(x,y)), basis e_1..e_r, v."""
    r = len(B)
    d = r + 1
    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(r):
        for j in range(r):
            c[i][j][r] = B[i][j]
    return AlgebraPresentation(d, c, kind, name=name)


def sl2():
    F = [[0, 0], [1, 0]]
    E = [[0, 1], [0, 0]]
    H = [[1, 0], [0, -1]]
    return from_matrix_basis([F, E, H], "lie", name="sl2")


def gl2():
    E11 = [[1, 0], [0, 0]]
    E12 = [[0, 1], [0, 0]]
    E21 = [[0, 0], [1, 0]]
    E22 = [[0, 0], [0, 1]]
    return from_matrix_basis([E11, E12, E21, E22], "lie", name="gl2")


def heisenberg():
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2] = 1
    c[1][0][2] = -1
    return AlgebraPresentation(3, c, "lie", name="heisenberg")


def heisenberg_product():
    """𝔥⋎𝔥 with [e1,e3] = [e2,e4] = e5."""
    B = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    return _bilinear_algebra(B, "lie", "h*h")


def ch(d):
    B = [[int(i == j) for j in range(d)] for i in range(d)]
    return _bilinear_algebra(B, "general", f"ch{d}")


def b_gamma3():
    """𝓑(2γ₃), 2γ₃ the integral polar form of 2(x1x2 − x3²); away from 2
    the factor 2 is absorbed by rescaling the central basis vector."""
    B = [[0, 1, 0], [1, 0, 0], [0, 0, -2]]
    return _bilinear_algebra(B, "general", "B(gamma3)")


def b_gamma4():
    """𝓑(2γ₄), γ₄ the polar form of two hyperbolic planes, paired like 𝔥⋎𝔥."""
    B = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    return _bilinear_algebra(B, "general", "B(gamma4)")


def unipotent_module(d):
    """Upper unitriangular integer matrices acting on ℤᵈ (generators E_ij, i<j)."""
    gens = []
    for i in range(d):
        for j in range(i + 1, d):
            gens.append([[int(r == i and s == j) for s in range(d)] for r in range(d)])
    return AlgebraPresentation(d, None, "associative", "module", gens, f"U{d}")


def full_matrix_module(d):
    gens = [[[int(r == i and s == j) for s in range(d)] for r in range(d)] for i in range(d) for j in range(d)]
    return AlgebraPresentation(d, None, "associative", "module", gens, f"Mat{d}")


def fil4():
    d = 5
    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for (i, j, k) in [(0, 1, 2), (0, 2, 3), (0, 3, 4), (1, 2, 4)]:
        c[i][j][k] = 1
        c[j][i][k] = -1
    return AlgebraPresentation(d, c, "lie", name="Fil4")


CATALOG = {
    "sl2": sl2,
    "gl2": gl2,
    "heisenberg": heisenberg,
    "hh": heisenberg_product,
    "ch2": lambda: ch(2),
    "ch3": lambda: ch(3),
    "ch4": lambda: ch(4),
    "ch5": lambda: ch(5),
    "bgamma3": b_gamma3,
    "bgamma4": b_gamma4,
    "u2": lambda: unipotent_module(2),
    "u3": lambda: unipotent_module(3),
    "u4": lambda: unipotent_module(4),
    "u5": lambda: unipotent_module(5),
    "mat2": lambda: full_matrix_module(2),
    "fil4": fil4,
    "z1": lambda: zero_algebra(1),
    "z2": lambda: zero_algebra(2),
    "z3": lambda: zero_algebra(3),
    "z4": lambda: zero_algebra(4),
}


def load_example(name):
    """Presentation from the bundled JSON files."""
    text = resources.files("conezeta").joinpath("data", f"{name}.json").read_text()
    return AlgebraPresentation.from_json(json.loads(text))
