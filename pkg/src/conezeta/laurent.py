"""Sparse multivariate Laurent polynomials over ℚ."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ZeroPolynomial


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


class LaurentPolynomial:
    """Exact Laurent polynomial; ``coeffs`` maps exponent tuples to Fractions."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n, coeffs=None):
        self.n = n
        d = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, c in items:
                e = tuple(int(x) for x in e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length {len(e)} != {n}")
                c = _frac(c)
                if c:
                    d[e] = d.get(e, 0) + c
                    if not d[e]:
                        del d[e]
        self.coeffs = d
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, n, exp, c=1):
        return cls(n, {tuple(exp): c})

    @classmethod
    def variable(cls, n, i):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    # basic protocol
    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.n, other)
        return isinstance(other, LaurentPolynomial) and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPolynomial({self.n}, {self.to_str()!r})"

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(self.n, other)
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = d.get(e, 0) + c
            if v:
                d[e] = v
            else:
                d.pop(e, None)
        out = LaurentPolynomial(self.n)
        out.coeffs = d
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPolynomial(self.n)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            c = _frac(other)
            out = LaurentPolynomial(self.n)
            out.coeffs = {e: v * c for e, v in self.coeffs.items()} if c else {}
            return out
        d = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = d.get(e, 0) + c1 * c2
                if v:
                    d[e] = v
                else:
                    d.pop(e, None)
        out = LaurentPolynomial(self.n)
        out.coeffs = d
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials may be inverted")
            (e, c), = self.coeffs.items()
            return LaurentPolynomial.monomial(self.n, [-x for x in e], 1 / c) ** (-k)
        out = LaurentPolynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # queries
    def support(self):
        return sorted(self.coeffs)

    def is_monomial(self):
        return len(self.coeffs) == 1

    def num_terms(self):
        return len(self.coeffs)

    def is_polynomial(self):
        return all(x >= 0 for e in self.coeffs for x in e)

    def shift(self, exp):
        out = LaurentPolynomial(self.n)
        out.coeffs = {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.coeffs.items()}
        return out

    def evaluate(self, point):
        """Exact value at a point with nonzero rational coordinates."""
        total = Fraction(0)
        for e, c in self.coeffs.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def derivative(self, i):
        d = {}
        for e, c in self.coeffs.items():
            if e[i]:
                ee = list(e)
                ee[i] -= 1
                d[tuple(ee)] = c * e[i]
        out = LaurentPolynomial(self.n)
        out.coeffs = d
        return out

    def initial_form(self, w):
        """Sum of the terms on which ⟨α,w⟩ is minimal."""
        if not self.coeffs:
            raise ZeroPolynomial("initial form of zero")
        vals = {e: sum(a * b for a, b in zip(e, w)) for e in self.coeffs}
        m = min(vals.values())
        out = LaurentPolynomial(self.n)
        out.coeffs = {e: c for e, c in self.coeffs.items() if vals[e] == m}
        return out

    def content_normalized(self):
        """(unit, g) with self = unit·g, g having coprime integer coefficients
        and positive leading (lexicographically largest exponent) coefficient."""
        if not self.coeffs:
            raise ZeroPolynomial("zero")
        den = 1
        for c in self.coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in self.coeffs.values()]
        g = 0
        for x in nums:
            g = gcd(g, x)
        lead = self.coeffs[max(self.coeffs)]
        unit = Fraction(g, den) * (1 if lead > 0 else -1)
        return unit, self * (1 / unit)

    def monomial_part(self):
        """Largest monomial dividing all terms (componentwise min exponent)."""
        exps = list(self.coeffs)
        return tuple(min(e[i] for e in exps) for i in range(self.n))

    def to_str(self, names=None):
        if not self.coeffs:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.n)]
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mon = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def to_json(self):
        return [{"exp": list(e), "c": str(self.coeffs[e])} for e in sorted(self.coeffs)]

    @classmethod
    def from_json(cls, n, items):
        return cls(n, {tuple(it["exp"]): Fraction(str(it["c"])) for it in items})


def monomial_exponent(f: LaurentPolynomial):
    (e,) = f.coeffs
    return e
