"""Cached computations shared by several test modules."""

from fractions import Fraction
from functools import lru_cache

from conezeta.algebra import CATALOG, cone_integral_data
from conezeta.ratfun import univariate
from conezeta.zeta import padic_zeta, specialized, topological_zeta


@lru_cache(maxsize=None)
def data(name):
    return cone_integral_data(CATALOG[name]())


@lru_cache(maxsize=None)
def top(name):
    D = data(name)
    T, rep = topological_zeta(D)
    return specialized(D, T), rep


@lru_cache(maxsize=None)
def padic(name, q):
    D = data(name)
    W, rep = padic_zeta(D, q)
    return specialized(D, W), rep


def rank(name):
    return CATALOG[name]().rank


# expected topological zeta functions, as (numerator coefficients low→high,
# [((slope, constant), multiplicity)], scalar in the denominator)
def expected(num, factors, scale=1):
    return univariate([Fraction(c, scale) for c in num], factors)
