"""Exact root location for univariate rational functions of s: degree,
pole orders, residues and bounds on real parts of numerator roots."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .ratfun import TopRatFun


def _trim(p):
    p = [Fraction(x) for x in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def univariate_parts(F: TopRatFun):
    """(numerator coefficients, [(const, slope, mult)]) of the normal form,
    coefficient lists indexed by the power of s."""
    if F.m != 1:
        raise ValueError("need a univariate function")
    num, den = F.normal_form()
    deg = max((e[0] for e in num.coeffs), default=-1)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in num.coeffs.items():
        coeffs[e[0]] = Fraction(c)
    return _trim(coeffs), [(L.const, L.coeffs[0], k) for L, k in sorted(den.items())]


def degree(F: TopRatFun):
    """deg numerator − deg denominator (None for the zero function)."""
    num, den = univariate_parts(F)
    if not num:
        return None
    return len(num) - 1 - sum(k for _, b, k in den if b)


def _order_at(p, a):
    """Multiplicity of a as a root of p."""
    k = 0
    while p and poly_eval(p, a) == 0:
        p = _synthetic_div(p, a)
        k += 1
    return k


def _synthetic_div(p, a):
    """p(s)/(s − a) for a root a."""
    out = [Fraction(0)] * (len(p) - 1)
    acc = Fraction(0)
    for i in range(len(p) - 1, 0, -1):
        acc = acc * a + p[i]
        out[i - 1] = acc
    return out


def poly_eval(p, x):
    v = Fraction(0)
    for c in reversed(p):
        v = v * x + c
    return v


def pole_order(F: TopRatFun, a=0):
    num, den = univariate_parts(F)
    a = Fraction(a)
    poles = sum(k for c, b, k in den if b and c + b * a == 0)
    return poles - _order_at(num, a)


def residue_at(F: TopRatFun, a=0):
    """Residue at a simple pole a."""
    if pole_order(F, a) != 1:
        raise ValueError("not a simple pole")
    num, den = univariate_parts(F)
    a = Fraction(a)
    v = poly_eval(num, a)
    for c, b, k in den:
        if b and c + b * a == 0:
            v /= Fraction(b) ** k
        else:
            v /= Fraction(c + b * a) ** k
    return v


def nilpotent_residue(d):
    """(−1)^{d−1}/(d−1)!"""
    return Fraction((-1) ** (d - 1), factorial(d - 1))


def taylor_shift(p, a):
    """Coefficients of p(s + a)."""
    out = list(p)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return out


def reflect(p):
    """Coefficients of p(−s)."""
    return [c if i % 2 == 0 else -c for i, c in enumerate(p)]


def hurwitz_stable(p):
    """True iff every root of p has negative real part (Routh array)."""
    p = _trim(p)
    if len(p) <= 1:
        return bool(p)
    rows = [list(reversed(p))[0::2], list(reversed(p))[1::2]]
    first = [rows[0][0]]
    while len(rows[-1]) and any(rows[-1]):
        a, b = rows[-2], rows[-1]
        if b[0] == 0:
            return False
        first.append(b[0])
        nxt = [(b[0] * (a[i + 1] if i + 1 < len(a) else 0) - a[0] * (b[i + 1] if i + 1 < len(b) else 0)) / b[0]
               for i in range(max(len(a), len(b)) - 1)]
        rows.append(_trim(nxt) or [])
    if len(first) != len(p):
        return False
    return all(x > 0 for x in first) or all(x < 0 for x in first)


def real_parts_within(p, lo, hi):
    """Every root r of p satisfies lo < Re r < hi (exact)."""
    p = _trim(p)
    if len(p) <= 1:
        return True
    lo, hi = Fraction(lo), Fraction(hi)
    return hurwitz_stable(reflect(taylor_shift(p, lo))) and hurwitz_stable(taylor_shift(p, hi))


def _rem(a, b):
    a = list(a)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[i + shift] -= c * x
        a = _trim(a)
    return a


def sturm_sequence(p):
    p = _trim(p)
    dp = _trim([i * c for i, c in enumerate(p)][1:])
    seq = [p, dp]
    while seq[-1]:
        r = _rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return seq


def _sign_changes(vals):
    vals = [v for v in vals if v]
    return sum(1 for x, y in zip(vals, vals[1:]) if (x > 0) != (y > 0))


def real_root_count(p, lo, hi):
    """Distinct real roots of p in (lo, hi]."""
    seq = sturm_sequence(p)
    lo, hi = Fraction(lo), Fraction(hi)
    return _sign_changes([poly_eval(q, lo) for q in seq]) - _sign_changes([poly_eval(q, hi) for q in seq])


def conjecture_report(F: TopRatFun, d, nilpotent=False):
    """Properties expected of the topological zeta function of a rank-d object."""
    num, _ = univariate_parts(F)
    out = {"degree": degree(F) == -d,
           "pole_at_zero": pole_order(F, 0) >= 1,
           "numerator_real_parts": real_parts_within(num, 0, d - 1) if d > 1 else len(num) <= 1}
    if nilpotent:
        out["simple_pole_at_zero"] = pole_order(F, 0) == 1
        out["residue"] = out["simple_pole_at_zero"] and residue_at(F, 0) == nilpotent_residue(d)
    return out
