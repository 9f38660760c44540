"""Assembly of explicit formulae for p-adic and topological zeta functions
of non-degenerate families (cone integrals, subalgebra counting, Igusa)."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .conegen import reduced_zed, zed_cone_polytopes
from .errors import BadPrime, DegenerateFamily
from .euler import relative_table
from .laurent import LaurentPolynomial
from .newton import (
    NondegVerdict,
    PolyFamily,
    newton_polytope,
    nondegeneracy_check,
    probe_degeneracy,
    torus_count,
    visible_newton_faces,
)
from .polyhedra import HalfOpenCone, convex_hull, intersect_halfopen, is_empty, orthant
from .ratfun import TermSum, TopRatFun, substitute_monomial_affine

log = logging.getLogger(__name__)


@dataclass
class IntegralData:
    """∫ over {ν(x) ∈ C0, ‖𝒇₀(x)‖ ≤ 1} of ∏‖𝒇_j(x)‖^{s_j}.

    ``specialization`` = (c, A) maps s_j ↦ ⟨A_j, s̃⟩ − c_j (equivalently
    t_j ↦ q^{c_j} T^{A_j}); ``normalization`` = (e, a) multiplies the
    p-adic result by (q−1)^e q^a.
    """

    n: int
    C0: HalfOpenCone
    family: PolyFamily
    specialization: tuple = None
    normalization: tuple = (0, 0)
    bad_primes: tuple = ()
    label: str = ""

    def __post_init__(self):
        if self.C0.ambient_dim != self.n:
            raise ValueError("cone and family live in different dimensions")


@dataclass
class ZetaReport:
    kind: str
    records: list = field(default_factory=list)
    verdict: NondegVerdict = None
    bad_primes: tuple = ()
    timing: float = 0.0
    warnings: list = field(default_factory=list)
    total: object = None

    def to_dict(self):
        d = {"kind": self.kind, "records": self.records,
             "bad_primes": list(self.bad_primes), "warnings": list(self.warnings),
             "timing_seconds": round(self.timing, 3)}
        if self.verdict is not None:
            d["verdict"] = self.verdict.to_dict()
        return d


# ---------------------------------------------------------------- helpers

def _lex_vertex(f: LaurentPolynomial):
    """Λ(f,τ): the lexicographically smallest exponent, always a vertex."""
    return min(f.coeffs)


def _players(data: IntegralData, face, inits, g):
    """C0^τ(g) and P_j^τ(g) (j ≥ 1) in ℝ^{n+|g|}."""
    n = data.n
    fam = data.family
    k = len(g)
    pos = {i: t for t, i in enumerate(g)}
    lam = [_lex_vertex(h) for h in inits]

    def lifted(i):
        ext = [0] * k
        if i in pos:
            ext[pos[i]] = 1
        return tuple(lam[i]) + tuple(ext)

    rows = [lifted(i) for i in fam.group_indices(0)]
    C = intersect_halfopen([face.cone, HalfOpenCone(n + k, tuple(r for r in rows if any(r)))],
                           ambient_dim=n + k, strict_positive=range(n, n + k))
    Ps = [convex_hull([lifted(i) for i in fam.group_indices(j)]) for j in range(1, fam.m + 1)]
    return C, Ps


def _subsets(live):
    for r in range(len(live) + 1):
        yield from combinations(live, r)


def _refuse(verdict):
    raise DegenerateFamily("family is degenerate relative to the cone", witness=verdict.witness.to_dict(),
                           verdict=verdict.to_dict())


def _probe(data, policy, report):
    verdict = probe_degeneracy(data.family, data.C0, policy)
    if verdict is not None:
        report.verdict = verdict
        _refuse(verdict)


def _check_verdict(data, policy, allow_likely, faces, report):
    verdict = nondegeneracy_check(data.family, data.C0, policy, faces=faces)
    report.verdict = verdict
    if verdict.status == "WitnessNo":
        _refuse(verdict)
    if verdict.status == "LikelyYes":
        report.warnings.append("non-degeneracy supported by finite-field search only")
        if not allow_likely:
            raise DegenerateFamily("non-degeneracy could not be certified", verdict=verdict.to_dict())
    return verdict


def _map(fn, jobs, workers):
    """fn over jobs, in order; a process pool when workers > 1."""
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs))


def _padic_face(job):
    data, face, q = job
    fam = data.family
    n = data.n
    total = TermSum(fam.m)
    recs = []
    inits = [f.initial_form(face.witness) for f in fam.members]
    live = [i for i, h in enumerate(inits) if not h.is_monomial()]
    for g in _subsets(live):
        keep = [inits[i] for i in g]
        avoid = [inits[i] for i in live if i not in g]
        count = torus_count(keep, avoid, q, n)
        if not count:
            continue
        C, Ps = _players(data, face, inits, g)
        if is_empty(C)[0]:
            continue
        W = _xi0_to_qinv(zed_cone_polytopes(C, Ps), fam.m).times_monomial(e=len(g), a0=-n) * count
        total = total + W
        recs.append({"face": face.index, "subset": list(g), "count": count, "terms": len(W.terms)})
    return total, recs


def _top_face(job):
    data, face = job
    fam = data.family
    n = data.n
    total = TopRatFun(fam.m)
    recs = []
    inits = [f.initial_form(face.witness) for f in fam.members]
    live = [i for i, h in enumerate(inits) if not h.is_monomial()]
    table = relative_table([newton_polytope(inits[i]) for i in live], n) if live else {(): Fraction(1)}
    for g in _subsets(live):
        chi = table[tuple(live.index(i) for i in g)]
        if not chi:
            continue
        C, Ps = _players(data, face, inits, g)
        R = reduced_zed(C, Ps, n - face.dim + len(g))
        if not R.term_count():
            continue
        total = total + R * chi
        recs.append({"face": face.index, "subset": list(g), "chi": str(chi), "dim": face.dim})
    return total, recs


# --------------------------------------------------------------- p-adic

def monomial_integral(C0: HalfOpenCone, Ps):
    """(q−1)ⁿ q⁻ⁿ · 𝒵^{C0,P}(q⁻¹, t) as a TermSum in t_1..t_m."""
    n = C0.ambient_dim
    empty, _ = is_empty(C0)
    m = len(Ps)
    if empty:
        return TermSum(m)
    Z = zed_cone_polytopes(C0, Ps)
    return _xi0_to_qinv(Z, m).times_monomial(e=n, a0=-n)


def _xi0_to_qinv(Z: TermSum, m):
    c = [-1] + [0] * m
    A = [[0] * m] + [[int(i == j) for j in range(m)] for i in range(m)]
    return substitute_monomial_affine(Z, c, A)


def padic_zeta(data: IntegralData, q, check=True, policy=None, allow_likely=True, workers=1):
    """Explicit formula at a fixed residue field size q.

    Returns (TermSum in t_1..t_m, report); apply ``specialize`` for the
    univariate form.
    """
    t0 = time.time()
    report = ZetaReport("padic")
    fam = data.family
    p = _char(q)
    if check:
        _probe(data, policy, report)
    faces = visible_newton_faces(fam, data.C0)
    if check:
        _check_verdict(data, policy, allow_likely, faces, report)
    bad = set(data.bad_primes) | {b for f in fam.members for b in _coeff_primes(f)}
    report.bad_primes = tuple(sorted(bad))
    if p in bad:
        raise BadPrime(f"q = {q} lies over an excluded prime", q=q, bad_primes=sorted(bad))
    total = TermSum(fam.m)
    for W, recs in _map(_padic_face, [(data, face, q) for face in faces], workers):
        total = total + W
        report.records.extend(recs)
    e, a = data.normalization
    total = total.times_monomial(e=e, a0=a)
    report.timing = time.time() - t0
    report.total = total
    return total, report


def _interpolate(xs, ys):
    """Coefficients (low degree first) of the polynomial through (xs, ys)."""
    k = len(xs)
    coeffs = [Fraction(0)] * k
    for i in range(k):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(k):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            den *= xs[i] - xs[j]
        for t, b in enumerate(basis):
            coeffs[t] += ys[i] * b / den
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def padic_zeta_uniform(data: IntegralData, qs=None, holdout=2, check=True,
                       policy=None, allow_likely=True, normalize=True):
    """Heuristic uniform formula: every torus count is interpolated as a
    polynomial in q−1 from all but the last ``holdout`` field sizes and
    verified at those.  By default n + 1 + holdout good primes are used,
    enough for counts of degree n.  Returns (TermSum in q and t, report)."""
    t0 = time.time()
    fam = data.family
    bad = set(data.bad_primes) | {b for f in fam.members for b in _coeff_primes(f)}
    qs = list(qs) if qs else _good_primes(max(data.n + 1, 5) + holdout, bad)
    if len(qs) - holdout < 5 or holdout < 2:
        raise ValueError("need at least 5 interpolation points and 2 held-out ones")
    report = ZetaReport("padic-uniform")
    report.warnings.append("uniform in q by interpolation of point counts (heuristic)")
    n = data.n
    if check:
        _probe(data, policy, report)
    faces = visible_newton_faces(fam, data.C0)
    if check:
        _check_verdict(data, policy, allow_likely, faces, report)
    report.bad_primes = tuple(sorted(bad))
    us = [Fraction(q - 1) for q in qs]
    total = TermSum(fam.m)
    for face in faces:
        inits = [f.initial_form(face.witness) for f in fam.members]
        live = [i for i, h in enumerate(inits) if not h.is_monomial()]
        for g in _subsets(live):
            keep = [inits[i] for i in g]
            avoid = [inits[i] for i in live if i not in g]
            counts = [torus_count(keep, avoid, q, n) for q in qs]
            if not any(counts):
                continue
            poly = _interpolate(us[:-holdout], counts[:-holdout])
            for u, c in zip(us[-holdout:], counts[-holdout:]):
                if sum(a * u ** k for k, a in enumerate(poly)) != c:
                    raise ValueError(f"point counts on face {face.index} are not polynomial in q")
            C, Ps = _players(data, face, inits, g)
            if is_empty(C)[0]:
                continue
            W = _xi0_to_qinv(zed_cone_polytopes(C, Ps), fam.m).times_monomial(e=len(g), a0=-n)
            for k, a in enumerate(poly):
                if a:
                    total = total + W.times_monomial(e=k) * a
            report.records.append({"face": face.index, "subset": list(g),
                                   "count_in_q_minus_1": [str(a) for a in poly]})
    if normalize:
        e, a = data.normalization
        total = total.times_monomial(e=e, a0=a)
    report.timing = time.time() - t0
    report.total = total
    return total, report


def _good_primes(k, bad):
    out = []
    p = 3
    while len(out) < k:
        if all(p % r for r in range(2, int(p ** 0.5) + 1)) and p not in bad:
            out.append(p)
        p += 2
    return out


def _char(q):
    for p in range(2, q + 1):
        if q % p == 0:
            return p
    raise ValueError(f"bad field size {q}")


def _coeff_primes(f):
    from .newton import _prime_factors
    out = set()
    for c in f.coeffs.values():
        for x in (c.numerator, c.denominator):
            if abs(x) > 1:
                out.update(_prime_factors(abs(x)))
    return out


# ----------------------------------------------------------- topological

def topological_zeta(data: IntegralData, check=True, policy=None, allow_likely=True, workers=1):
    """Σ_{τ,g} χ^rel_g · red W^τ_g as an exact TopRatFun in s_1..s_m."""
    t0 = time.time()
    report = ZetaReport("topological")
    fam = data.family
    if check:
        _probe(data, policy, report)
    faces = visible_newton_faces(fam, data.C0)
    if check:
        _check_verdict(data, policy, allow_likely, faces, report)
    total = TopRatFun(fam.m)
    for R, recs in _map(_top_face, [(data, face) for face in faces], workers):
        total = total + R
        report.records.extend(recs)
    report.timing = time.time() - t0
    report.total = total
    return total, report


# ---------------------------------------------------------- specialization

def specialize(Z, c, A):
    """s_j ↦ ⟨A_j, s̃⟩ − c_j, i.e. t_j ↦ q^{c_j} T^{A_j}."""
    if isinstance(Z, TopRatFun):
        return Z.substitute(c, A)
    return substitute_monomial_affine(Z, c, A)


def specialize_integrand(Z, d):
    """Integrand exponents s − 1, …, s − d (t_j ↦ q^{j} T)."""
    c = list(range(1, d + 1))
    A = [[1] for _ in range(d)]
    return specialize(Z, c, A)


def specialized(data: IntegralData, Z):
    if data.specialization is None:
        return Z
    c, A = data.specialization
    return specialize(Z, c, A)


# ----------------------------------------------------------------- Igusa

def igusa_data(fs, mults=None, cone=None):
    fs = list(fs)
    n = fs[0].n
    mults = list(mults or [1] * len(fs))
    fam = PolyFamily([[]] + [[f] for f in fs], n)
    spec = ([0] * len(fs), [[e] for e in mults])
    C0 = orthant(n) if cone is None else intersect_halfopen([orthant(n), cone], ambient_dim=n)
    return IntegralData(n, C0, fam, spec, (0, 0), label="igusa")


def igusa_front(fs, mults=None, q=None, check=True, policy=None, allow_likely=True):
    """Local and topological zeta functions of ∏ f_j^{e_j} via s_j = e_j s."""
    data = igusa_data(fs, mults)
    out = {}
    if q is not None:
        Z, rep = padic_zeta(data, q, check, policy, allow_likely)
        out["padic"] = specialized(data, Z)
        out["padic_report"] = rep
    T, rep = topological_zeta(data, check, policy, allow_likely)
    out["topological"] = specialized(data, T)
    out["topological_report"] = rep
    return out
