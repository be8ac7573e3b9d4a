"""Exact rational scalars, matrices and polynomials used by every other module."""

from .matrix import RMatrix, canonical_vector, char_poly, rational_eigenvalues
from .poly import (
    MultiPoly,
    UniPoly,
    has_multiple_components,
    poly_det,
    poly_divexact,
    poly_from_obj,
    poly_gcd,
    poly_to_obj,
    repeated_part,
    restrict,
    squarefree_part,
)

__all__ = [
    "MultiPoly",
    "RMatrix",
    "UniPoly",
    "canonical_vector",
    "char_poly",
    "has_multiple_components",
    "poly_det",
    "poly_divexact",
    "poly_from_obj",
    "poly_gcd",
    "poly_to_obj",
    "rational_eigenvalues",
    "repeated_part",
    "restrict",
    "squarefree_part",
]
