"""Exact fields, polynomials, rational functions and their factorization kernels."""

from .factor import (
    NeedsExtension,
    all_constant_roots,
    constant_root,
    coprime_refinement,
    embed_poly,
    embed_ratfunc,
    factor_irreducible,
    factored,
    finite_places,
    is_irreducible,
    poly_gcd,
    poly_lcm,
    poly_roots,
    poly_xgcd,
    pth_power_level,
    radical,
    rational_places,
    rational_roots,
    squarefree_decomposition,
)
from .fields import GF, QQ, ExtElem, ExtensionField, FieldError, PrimeField, Rationals, field_from_tag
from .poly import NEG_INF, LaurentPoly, Poly
from .ratfunc import INFINITY, Place, RatFunc, flip, valuation

__all__ = [
    "GF",
    "INFINITY",
    "NEG_INF",
    "QQ",
    "ExtElem",
    "ExtensionField",
    "FieldError",
    "LaurentPoly",
    "NeedsExtension",
    "Place",
    "Poly",
    "PrimeField",
    "RatFunc",
    "Rationals",
    "all_constant_roots",
    "constant_root",
    "coprime_refinement",
    "embed_poly",
    "embed_ratfunc",
    "factor_irreducible",
    "factored",
    "field_from_tag",
    "finite_places",
    "flip",
    "is_irreducible",
    "poly_gcd",
    "poly_lcm",
    "poly_roots",
    "poly_xgcd",
    "pth_power_level",
    "radical",
    "rational_places",
    "rational_roots",
    "squarefree_decomposition",
    "valuation",
]
