"""Rational functions in q and t built from binomial denominators.

A ``TermSum`` is a formal sum of terms

    c · (q−1)^e · q^a0 · t^b0 / ∏ (1 − q^a t^b)

and a ``TopRatFun`` is a formal sum of constants over products of affine
linear forms in s_1, …, s_m.  Both carry a lazily computed single-fraction
normal form used for equality tests and printing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotInRingM, PoleHit, SpecializationCollapse
from .laurent import LaurentPolynomial


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    e: int
    a0: int
    b0: tuple
    den: tuple  # sorted tuple of (a, b) with b a tuple

    def scaled(self, c):
        return Term(self.coeff * c, self.e, self.a0, self.b0, self.den)


def make_term(coeff, e, a0, b0, den):
    den = tuple(sorted((int(a), tuple(int(x) for x in b)) for a, b in den))
    for a, b in den:
        if a == 0 and not any(b):
            raise SpecializationCollapse("denominator factor 1 - 1")
    return Term(Fraction(coeff), int(e), int(a0), tuple(int(x) for x in b0), den)


class TermSum:
    """Formal sum of binomial-denominator terms in q and t_1..t_m."""

    def __init__(self, m, terms=()):
        self.m = m
        self.terms = list(terms)
        for t in self.terms:
            if len(t.b0) != m or any(len(b) != m for _, b in t.den):
                raise ValueError("term has wrong number of t-variables")

    def __repr__(self):
        return f"TermSum(m={self.m}, {len(self.terms)} terms)"

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if other.m != self.m:
            raise ValueError("different numbers of variables")
        return TermSum(self.m, self.terms + other.terms)

    __radd__ = __add__

    def __mul__(self, c):
        c = Fraction(c)
        if not c:
            return TermSum(self.m)
        return TermSum(self.m, [t.scaled(c) for t in self.terms])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def times_monomial(self, e=0, a0=0, b0=None):
        """Multiply by (q−1)^e q^a0 t^b0."""
        b0 = b0 or (0,) * self.m
        return TermSum(self.m, [Term(t.coeff, t.e + e, t.a0 + a0,
                                     tuple(x + y for x, y in zip(t.b0, b0)), t.den) for t in self.terms])

    def sorted_terms(self):
        return sorted(self.terms, key=lambda t: (t.den, t.e, t.a0, t.b0, t.coeff))

    def __eq__(self, other):
        if not isinstance(other, TermSum):
            return NotImplemented
        return normalize_fraction(self) == normalize_fraction(other)

    def to_json(self):
        return [{"c": str(t.coeff), "e": t.e, "a0": t.a0, "b0": list(t.b0),
                 "den": [[a, list(b)] for a, b in t.den]} for t in self.sorted_terms()]

    @classmethod
    def from_json(cls, m, items):
        return cls(m, [make_term(Fraction(it["c"]), it["e"], it["a0"], it["b0"],
                                 [(a, tuple(b)) for a, b in it["den"]]) for it in items])


def combine(ws):
    """Σ scalar·W without any cancellation."""
    ws = list(ws)
    if not ws:
        raise ValueError("need at least one summand")
    m = ws[0][1].m
    terms = []
    for c, W in ws:
        if W.m != m:
            raise ValueError("different numbers of variables")
        c = Fraction(c)
        if c:
            terms.extend(t.scaled(c) for t in W.terms)
    return TermSum(m, terms)


def substitute_monomial_affine(W: TermSum, c, A):
    """Apply t_j ↦ q^{c_j} · t̃^{A_j} (A is m×r)."""
    c = [int(x) for x in c]
    A = [[int(x) for x in row] for row in A]
    r = len(A[0]) if A else 0

    def mono(a, b):
        a2 = a + sum(bj * cj for bj, cj in zip(b, c))
        b2 = tuple(sum(b[j] * A[j][k] for j in range(len(b))) for k in range(r))
        return a2, b2

    out = []
    for t in W.terms:
        a0, b0 = mono(t.a0, t.b0)
        den = []
        for a, b in t.den:
            a2, b2 = mono(a, b)
            if a2 == 0 and not any(b2):
                raise SpecializationCollapse(f"factor (1 - q^{a} t^{list(b)}) becomes 1 - 1",
                                             factor=[a, list(b)])
            den.append((a2, b2))
        out.append(Term(t.coeff, t.e, a0, b0, tuple(sorted(den))))
    return TermSum(r, out)


def evaluate_numeric(W: TermSum, q, t):
    """Exact value at rational q and t."""
    q = Fraction(q)
    t = [Fraction(x) for x in t]

    def mono(a, b):
        v = q ** a
        for x, k in zip(t, b):
            if k:
                v *= x ** k
        return v

    total = Fraction(0)
    for term in W.terms:
        v = term.coeff * (q - 1) ** term.e * mono(term.a0, term.b0)
        for a, b in term.den:
            d = 1 - mono(a, b)
            if d == 0:
                raise PoleHit(f"factor (1 - q^{a} t^{list(b)}) vanishes", factor=[a, list(b)])
            v /= d
        total += v
    return total


# ------------------------------------------------------------ normalization

def _canon_factor(c, exp, q_last=False):
    """Orient 1 − c·X^exp so the first nonzero exponent is positive.

    With ``q_last`` the leading variable (q) is consulted after the others,
    so factors read 1 − q^a·t^b with b positive where possible.

    Returns (unit_coeff, unit_exp, (c', exp')) with
    1 − c X^exp = unit_coeff · X^unit_exp · (1 − c' X^exp')."""
    order = exp[1:] + exp[:1] if q_last else exp
    lead = next(x for x in order if x)
    if lead > 0:
        return Fraction(1), None, (c, exp)
    return -c, exp, (1 / c, tuple(-x for x in exp))


def _mul_binomial(p: LaurentPolynomial, c, exp):
    return p - p.shift(exp) * c


def _divide_binomial(p: LaurentPolynomial, c, exp):
    """Exact quotient p / (1 − c·X^exp) or None if it does not divide."""
    if not p.coeffs:
        return p
    i = next(k for k, x in enumerate(exp) if x)
    ei = exp[i]
    lines = {}
    for a, v in p.coeffs.items():
        j = a[i] // ei
        rep = tuple(x - j * y for x, y in zip(a, exp))
        lines.setdefault(rep, {})[j] = v
    out = {}
    for rep, seq in lines.items():
        lo, hi = min(seq), max(seq)
        acc = Fraction(0)
        for j in range(lo, hi + 1):
            acc = seq.get(j, 0) + c * acc
            if j < hi:
                if acc:
                    out[tuple(x + j * y for x, y in zip(rep, exp))] = acc
            elif acc:
                return None
        # the last partial sum must vanish: handled above
    res = LaurentPolynomial(p.n)
    res.coeffs = out
    return res


class NormalizedFraction:
    """num / ∏ (1 − c·X^exp)^mult over variables ``names``."""

    def __init__(self, names, num: LaurentPolynomial, den: dict):
        self.names = tuple(names)
        self.num = num
        self.den = {k: v for k, v in den.items() if v}

    def __repr__(self):
        return f"NormalizedFraction({self.to_text()})"

    def _expanded_den(self, factors):
        p = LaurentPolynomial.constant(len(self.names), 1)
        for (c, exp), k in sorted(factors.items()):
            for _ in range(k):
                p = _mul_binomial(p, c, exp)
        return p

    def __eq__(self, other):
        if not isinstance(other, NormalizedFraction) or self.names != other.names:
            return NotImplemented
        keys = set(self.den) | set(other.den)
        lcm = {k: max(self.den.get(k, 0), other.den.get(k, 0)) for k in keys}
        a = self.num * self._expanded_den({k: lcm[k] - self.den.get(k, 0) for k in keys})
        b = other.num * self._expanded_den({k: lcm[k] - other.den.get(k, 0) for k in keys})
        return a == b

    def evaluate(self, point):
        v = self.num.evaluate(point)
        for (c, exp), k in self.den.items():
            x = 1 - c * LaurentPolynomial.monomial(len(self.names), exp).evaluate(point)
            if x == 0:
                raise PoleHit("denominator vanishes")
            v /= x ** k
        return v

    def _factor_text(self, c, exp, latex=False):
        mon = []
        for name, k in zip(self.names, exp):
            if k == 0:
                continue
            if k == 1:
                mon.append(name)
            else:
                mon.append(f"{name}^{{{k}}}" if latex else f"{name}^{k}")
        mon = ("" if latex else "*").join(mon) if not latex else " ".join(mon)
        if c == 1:
            return f"(1 - {mon})"
        return f"(1 - {c}{'' if latex else '*'}{mon})"

    def to_text(self, latex=False):
        num = self.num.to_str(list(self.names))
        if not self.den:
            return num
        parts = []
        for (c, exp), k in sorted(self.den.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            f = self._factor_text(c, exp, latex)
            parts.append(f + (f"^{{{k}}}" if latex and k > 1 else (f"^{k}" if k > 1 else "")))
        den = ("" if latex else "*").join(parts) if not latex else "".join(parts)
        if latex:
            return r"\frac{" + num + "}{" + den + "}"
        return f"({num})/({den})"


def _term_parts(t: Term, m, q=None):
    """Numerator polynomial and canonical denominator Counter for one term."""
    if q is None:
        nv = m + 1
        num = LaurentPolynomial.monomial(nv, (t.a0,) + t.b0, t.coeff)
        e = t.e
        den = Counter()
        qvar = (1,) + (0,) * m
        if e >= 0:
            base = LaurentPolynomial(nv, {qvar: 1, (0,) * nv: -1})
            num = num * base ** e
        else:
            num = num * ((-1) ** (-e))
            den[(Fraction(1), qvar)] += -e
        for a, b in t.den:
            unit_c, unit_e, f = _canon_factor(Fraction(1), (a,) + b, q_last=True)
            if unit_e is not None:
                num = num.shift(tuple(-x for x in unit_e)) * (1 / unit_c)
            den[f] += 1
        return num, den
    q = Fraction(q)
    coeff = t.coeff * (q - 1) ** t.e * q ** t.a0
    num_exp = t.b0
    den = Counter()
    for a, b in t.den:
        c = q ** a
        if not any(b):
            if c == 1:
                raise PoleHit("constant factor 1 - 1")
            coeff /= (1 - c)
            continue
        unit_c, unit_e, f = _canon_factor(c, b)
        if unit_e is not None:
            coeff /= unit_c
            num_exp = tuple(x - y for x, y in zip(num_exp, unit_e))
        den[f] += 1
    return LaurentPolynomial.monomial(m, num_exp, coeff), den


def normalize_fraction(W: TermSum, q=None):
    """Single fraction with cancelled binomial factors.

    With ``q=None`` the variables are (q, t_1, …, t_m); with a rational q
    the value is substituted first and the variables are t_1, …, t_m.
    """
    m = W.m
    names = (("q",) if q is None else ()) + (("T",) if m == 1 else tuple(f"t{j + 1}" for j in range(m)))
    nv = len(names)
    groups = {}
    for t in W.terms:
        num, den = _term_parts(t, m, q)
        key = tuple(sorted(den.items()))
        groups[key] = groups.get(key, LaurentPolynomial(nv)) + num
    lcm = Counter()
    for key in groups:
        for f, k in key:
            lcm[f] = max(lcm[f], k)
    N = LaurentPolynomial(nv)
    for key, num in sorted(groups.items()):
        if not num:
            continue
        have = dict(key)
        p = num
        for f in sorted(lcm):
            for _ in range(lcm[f] - have.get(f, 0)):
                p = _mul_binomial(p, *f)
        N = N + p
    if not N:
        return NormalizedFraction(names, N, {})
    den = dict(lcm)
    for f in sorted(den):
        while den[f]:
            qt = _divide_binomial(N, *f)
            if qt is None:
                break
            N = qt
            den[f] -= 1
    return NormalizedFraction(names, N, den)


def power_series_coeffs(W: TermSum, order, q):
    """Taylor coefficients c_0..c_order in T of a univariate TermSum at fixed q."""
    if W.m != 1:
        raise ValueError("power series need a univariate TermSum")
    q = Fraction(q)
    total = [Fraction(0)] * (order + 1)
    low_total = {}
    for t in W.terms:
        coeff = t.coeff * (q - 1) ** t.e * q ** t.a0
        series = {t.b0[0]: coeff}
        for a, (b,) in t.den:
            c = q ** a
            if b == 0:
                if c == 1:
                    raise PoleHit("constant factor vanishes at this q", factor=[a, [b]])
                series = {k: v / (1 - c) for k, v in series.items()}
                continue
            if b < 0:
                # 1/(1 − cT^b) = −c^{-1}T^{-b}/(1 − c^{-1}T^{-b})
                series = {k - b: -v / c for k, v in series.items()}
                c, b = 1 / c, -b
            new = {}
            for k, v in series.items():
                j = 0
                while k + j * b <= order:
                    new[k + j * b] = new.get(k + j * b, 0) + v * c ** j
                    j += 1
            series = new
        for k, v in series.items():
            if k < 0:
                low_total[k] = low_total.get(k, 0) + v
            elif k <= order:
                total[k] += v
    if any(v for v in low_total.values()):
        raise ValueError("not a power series in T")
    return total


# ------------------------------------------------------ topological side

@dataclass(frozen=True, order=True)
class LinearForm:
    """const + Σ coeffs_j s_j with integer data."""

    const: int
    coeffs: tuple

    def value(self, s):
        return self.const + sum(c * Fraction(x) for c, x in zip(self.coeffs, s))

    def canonical(self):
        """(scalar, form) with self = scalar·form, form content-free and its
        leading s-coefficient (or constant if s-free) positive."""
        g = 0
        for x in (self.const,) + self.coeffs:
            g = gcd(g, x)
        if g == 0:
            return Fraction(0), self
        lead = next((x for x in self.coeffs if x), self.const)
        if lead < 0:
            g = -g
        return Fraction(g), LinearForm(self.const // g, tuple(x // g for x in self.coeffs))

    def as_poly(self):
        m = len(self.coeffs)
        d = {(0,) * m: self.const}
        for j, c in enumerate(self.coeffs):
            if c:
                e = [0] * m
                e[j] = 1
                d[tuple(e)] = c
        return LaurentPolynomial(m, d)

    def substitute(self, c, A):
        """s_j ↦ ⟨A_j, s̃⟩ − c_j."""
        r = len(A[0]) if A else 0
        const = self.const - sum(b * cj for b, cj in zip(self.coeffs, c))
        co = tuple(sum(self.coeffs[j] * A[j][k] for j in range(len(self.coeffs))) for k in range(r))
        return LinearForm(const, co)

    def to_text(self, names, latex=False):
        parts = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}{name}")
        if self.const or not parts:
            parts.append(str(self.const))
        s = " + ".join(parts).replace("+ -", "- ")
        return s


def _sname(m):
    return ("s",) if m == 1 else tuple(f"s{j + 1}" for j in range(m))


def _subst_poly(p: LaurentPolynomial, c, A):
    """Polynomial p(s) with s_j ↦ ⟨A_j, s̃⟩ − c_j."""
    r = len(A[0]) if A else 0
    images = [LinearForm(-c[j], tuple(A[j])).as_poly() if r else LaurentPolynomial.constant(0, -c[j])
              for j in range(p.n)]
    out = LaurentPolynomial(r)
    for e, coef in p.coeffs.items():
        if any(x < 0 for x in e):
            raise ValueError("negative powers of s are not polynomial")
        t = LaurentPolynomial.constant(r, coef)
        for j, k in enumerate(e):
            if k:
                t = t * images[j] ** k
        out = out + t
    return out


class TopRatFun:
    """Σ P_i(s) / ∏ (linear forms) with a cached single-fraction normal form.

    Terms are pairs (numerator polynomial, sorted tuple of canonical
    LinearForms).  Reduction produces constant numerators; fractions built
    with ``from_fraction`` carry a polynomial one.
    """

    def __init__(self, m, terms=()):
        self.m = m
        self._terms = []
        for c, den in terms:
            self._add_term(c, den)
        self._normal = None

    def _add_term(self, c, den):
        num = c if isinstance(c, LaurentPolynomial) else LaurentPolynomial.constant(self.m, c)
        forms = []
        for L in den:
            if not any(L.coeffs):
                if L.const == 0:
                    raise PoleHit("zero linear form")
                num = num * (Fraction(1) / L.const)
                continue
            sc, f = L.canonical()
            num = num * (1 / sc)
            forms.append(f)
        if num.coeffs:
            self._terms.append((num, tuple(sorted(forms))))
        self._normal = None

    @property
    def terms(self):
        return list(self._terms)

    @classmethod
    def from_fraction(cls, num: LaurentPolynomial, den: dict):
        """Build from a polynomial numerator and {LinearForm: multiplicity}."""
        F = cls(num.n)
        forms = []
        for L, k in sorted(den.items()):
            forms.extend([L] * k)
        F._add_term(num, forms)
        return F

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if self.m != other.m:
            raise ValueError("different numbers of variables")
        out = TopRatFun(self.m)
        out._terms = self._terms + other._terms
        return out

    __radd__ = __add__

    def __mul__(self, c):
        c = Fraction(c)
        out = TopRatFun(self.m)
        if c:
            out._terms = [(p * c, d) for p, d in self._terms]
        return out

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def normal_form(self):
        """(numerator polynomial in s, {LinearForm: multiplicity})."""
        if self._normal is None:
            self._normal = _normalize_top(self.m, self._terms)
        return self._normal

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TopRatFun.from_fraction(LaurentPolynomial.constant(self.m, other), {})
        if not isinstance(other, TopRatFun):
            return NotImplemented
        if self.m != other.m:
            return False
        n1, d1 = self.normal_form()
        n2, d2 = other.normal_form()
        keys = set(d1) | set(d2)
        lcm = {k: max(d1.get(k, 0), d2.get(k, 0)) for k in keys}
        a = n1 * _forms_product({k: lcm[k] - d1.get(k, 0) for k in keys}, self.m)
        b = n2 * _forms_product({k: lcm[k] - d2.get(k, 0) for k in keys}, self.m)
        return a == b

    def is_zero(self):
        return not self.normal_form()[0].coeffs

    def term_count(self):
        """Number of unsimplified summands (0 only for an empty sum)."""
        return len(self._terms)

    def evaluate(self, s):
        num, den = self.normal_form()
        v = num.evaluate(s) if num.coeffs else Fraction(0)
        for L, k in den.items():
            x = L.value(s)
            if x == 0:
                raise PoleHit("evaluation at a pole")
            v /= x ** k
        return v

    def substitute(self, c, A):
        """Affine specialization s_j ↦ ⟨A_j, s̃⟩ − c_j, applied termwise."""
        r = len(A[0]) if A else 0
        out = TopRatFun(r)
        for num, den in self._terms:
            out._add_term(_subst_poly(num, c, A), [L.substitute(c, A) for L in den])
        return out

    def to_text(self, latex=False):
        num, den = self.normal_form()
        return _render(num, den, _sname(self.m), latex)

    def __repr__(self):
        return f"TopRatFun({self.to_text()})"

    def to_json(self):
        num, den = self.normal_form()
        return {"m": self.m,
                "numerator": num.to_json(),
                "denominator": [{"const": L.const, "coeffs": list(L.coeffs), "mult": k}
                                for L, k in sorted(den.items())]}

    @classmethod
    def from_json(cls, d):
        m = d["m"]
        num = LaurentPolynomial.from_json(m, d["numerator"])
        den = {LinearForm(x["const"], tuple(x["coeffs"])): x["mult"] for x in d["denominator"]}
        return cls.from_fraction(num, den)


def _forms_product(factors, m):
    p = LaurentPolynomial.constant(m, 1)
    for L, k in sorted(factors.items()):
        for _ in range(k):
            p = p * L.as_poly()
    return p


def _divide_linear(p: LaurentPolynomial, L: LinearForm):
    """Exact quotient p / L or None."""
    if not p.coeffs:
        return p
    j = max(k for k, x in enumerate(L.coeffs) if x)
    lc = Fraction(L.coeffs[j])
    Lp = L.as_poly()
    rem = p
    quot = LaurentPolynomial(p.n)
    while rem.coeffs:
        top = max(e[j] for e in rem.coeffs)
        if top == 0:
            return None
        lead = LaurentPolynomial(p.n)
        for e, c in rem.coeffs.items():
            if e[j] == top:
                ee = list(e)
                ee[j] -= 1
                lead.coeffs[tuple(ee)] = c / lc
        quot = quot + lead
        rem = rem - lead * Lp
    return quot


def _cancel_forms(num, den):
    den = {L: k for L, k in den.items() if k}
    for L in sorted(den):
        while den[L]:
            qt = _divide_linear(num, L)
            if qt is None:
                break
            num = qt
            den[L] -= 1
    return num, {L: k for L, k in den.items() if k}


def _normalize_top(m, terms):
    groups = {}
    for num, forms in terms:
        key = tuple(sorted(Counter(forms).items()))
        groups[key] = groups.get(key, LaurentPolynomial(m)) + num
    groups = {k: v for k, v in groups.items() if v.coeffs}
    if not groups:
        return LaurentPolynomial(m), {}
    # pairwise merging keeps intermediate denominators small
    items = [(v, dict(k)) for k, v in sorted(groups.items())]
    while len(items) > 1:
        nxt = []
        for i in range(0, len(items) - 1, 2):
            nxt.append(_add_fractions(items[i], items[i + 1], m))
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    num, den = items[0]
    return _cancel_forms(num, den)


def _add_fractions(x, y, m):
    n1, d1 = x
    n2, d2 = y
    keys = set(d1) | set(d2)
    lcm = {k: max(d1.get(k, 0), d2.get(k, 0)) for k in keys}
    a = n1 * _forms_product({k: lcm[k] - d1.get(k, 0) for k in keys}, m)
    b = n2 * _forms_product({k: lcm[k] - d2.get(k, 0) for k in keys}, m)
    num = a + b
    if not num.coeffs:
        return num, {}
    return _cancel_forms(num, lcm)


def _render(num, den, names, latex=False):
    if not num.coeffs:
        return "0"
    unit, prim = num.content_normalized()
    u_num, u_den = unit.numerator, unit.denominator
    factors = sorted(den.items(), key=lambda kv: (tuple(-x for x in kv[0].coeffs), kv[0].const))
    parts = [str(u_den)] if u_den != 1 else []
    bare_flags = [False] * len(parts)
    for L, k in factors:
        txt = L.to_text(names)
        bare = txt in names
        base = txt if bare else f"({txt})"
        if k > 1:
            base = f"{base}^{{{k}}}" if latex else f"{base}^{k}"
        parts.append(base)
        bare_flags.append(bare)
    bottom = ""
    for p, bare in zip(parts, bare_flags):
        if bottom and bare:
            bottom += " "
        bottom += p
    const_num = list(prim.coeffs) == [(0,) * num.n]
    ptxt = _poly_text(prim, names)
    multi = len(prim.coeffs) > 1
    if const_num:
        top = str(u_num)
    elif u_num == 1:
        top = ptxt
    elif u_num == -1:
        top = f"-({ptxt})" if multi else f"-{ptxt}"
    else:
        top = f"{u_num}({ptxt})" if multi else f"{u_num}{ptxt}"
    if latex:
        return top if not parts else r"\frac{" + top + "}{" + bottom + "}"
    if not parts:
        return top
    if multi and u_num == 1:
        top = f"({top})"
    if len(parts) > 1 and not (len(parts) == 1 and parts[0].startswith("(")):
        return f"{top}/({bottom})"
    return f"{top}/{bottom}"


def _poly_text(p, names):
    parts = []
    for e in sorted(p.coeffs, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = p.coeffs[e]
        mon = "".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if not mon:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{c}{mon}")
    return " + ".join(parts).replace("+ -", "- ")


def reduce_mod_qminus1(W: TermSum) -> TopRatFun:
    """Formal reduction modulo q−1 of an element of the ring 𝕄."""
    out = TopRatFun(W.m)
    for t in W.terms:
        d = len(t.den)
        if t.e > d:
            continue
        if t.e < d:
            raise NotInRingM(f"term with (q-1)-order {t.e} over {d} binomials")
        out._add_term(t.coeff, [LinearForm(-a, b) for a, b in t.den])
    return out


def linear_forms_fraction(coeff, factors, m=1):
    """coeff / ∏ L^k for factors given as ((const, coeffs), k) pairs."""
    num = LaurentPolynomial.constant(m, coeff)
    den = {}
    for (c0, co), k in factors:
        sc, L = LinearForm(c0, tuple(co)).canonical()
        num = num * (Fraction(1) / sc ** k)
        den[L] = den.get(L, 0) + k
    return TopRatFun.from_fraction(num, den)


def univariate(num_coeffs, den_factors):
    """Helper: (Σ a_i s^i) / ∏ (b s + c)^k with den_factors as ((b, c), k)."""
    num = LaurentPolynomial(1, {(i,): Fraction(a) for i, a in enumerate(num_coeffs) if a})
    den = {}
    for (b, c), k in den_factors:
        sc, L = LinearForm(c, (b,)).canonical()
        num = num * (Fraction(1) / sc ** k)
        den[L] = den.get(L, 0) + k
    return TopRatFun.from_fraction(num, den)
