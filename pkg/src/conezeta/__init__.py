"""Exact p-adic and topological zeta functions of cone integrals, with
subalgebra, ideal and submodule zeta functions as the main application."""

from .algebra import AlgebraPresentation, CATALOG, change_basis, cone_integral_data, load_example
from .errors import DegenerateFamily, ZetaError
from .laurent import LaurentPolynomial
from .newton import PolyFamily, nondegeneracy_check
from .polyhedra import HalfOpenCone
from .ratfun import TermSum, TopRatFun, normalize_fraction, power_series_coeffs
from .zeta import (
    IntegralData,
    igusa_front,
    padic_zeta,
    padic_zeta_uniform,
    specialize_integrand,
    specialized,
    topological_zeta,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraPresentation",
    "CATALOG",
    "DegenerateFamily",
    "HalfOpenCone",
    "IntegralData",
    "LaurentPolynomial",
    "PolyFamily",
    "TermSum",
    "TopRatFun",
    "ZetaError",
    "change_basis",
    "cone_integral_data",
    "igusa_front",
    "load_example",
    "nondegeneracy_check",
    "normalize_fraction",
    "padic_zeta",
    "padic_zeta_uniform",
    "power_series_coeffs",
    "specialize_integrand",
    "specialized",
    "topological_zeta",
]
