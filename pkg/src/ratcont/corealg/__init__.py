"""Exact polynomials, rational functions and radical extension rings over Q."""

from ratcont.corealg.gcd import poly_gcd, poly_lcm
from ratcont.corealg.poly import Poly, poly_arith, substitute, var_key, variables
from ratcont.corealg.radical import (
    RadicalRing,
    RadPoly,
    multiplication_matrix,
    rad_arith,
    rad_exact_divide,
)
from ratcont.corealg.ratfun import (
    UNDEFINED,
    RatFun,
    Undefined,
    iterated_restrict,
    rat_evaluate,
    rat_normalize,
)

__all__ = [
    "Poly",
    "RadPoly",
    "RadicalRing",
    "RatFun",
    "UNDEFINED",
    "Undefined",
    "iterated_restrict",
    "multiplication_matrix",
    "poly_arith",
    "poly_gcd",
    "poly_lcm",
    "rad_arith",
    "rad_exact_divide",
    "rat_evaluate",
    "rat_normalize",
    "substitute",
    "var_key",
    "variables",
]
