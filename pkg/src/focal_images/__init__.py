"""Models of projective submanifolds with degenerate Gauss maps.

The package represents such a submanifold near a generator by its
second-order matrix data, computes the focal hypersurface and hypercone
exactly over the rationals, classifies the structure (torsal, cone,
hypersurface type, reducible composites), and cross-checks generated
parametric examples with a floating-point rank oracle.
"""

from .classify import (
    DiagonalizedSystem,
    StructureReport,
    block_decompose,
    classify,
    classify_block,
    eigenvalue_matrices,
    normalize,
    simultaneous_diagonalize,
)
from .duality import dualize
from .exactmath import MultiPoly, RMatrix, UniPoly
from .oracle import (
    ParametricModel,
    gauss_rank,
    singular_locus_on_generator,
    tangent_space,
    verify_leaf_linearity,
)
from .system import (
    FocalImages,
    FundamentalForms,
    MatrixSystem,
    ValidationReport,
    characteristic_subspace,
    focal_hypercone,
    focal_hypersurface,
    focal_images,
    load_system,
    osculating_dimension,
    regular_point,
    save_system,
    second_fundamental_forms,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "DiagonalizedSystem",
    "FocalImages",
    "FundamentalForms",
    "MatrixSystem",
    "MultiPoly",
    "ParametricModel",
    "RMatrix",
    "StructureReport",
    "UniPoly",
    "ValidationReport",
    "block_decompose",
    "characteristic_subspace",
    "classify",
    "classify_block",
    "dualize",
    "eigenvalue_matrices",
    "focal_hypercone",
    "focal_hypersurface",
    "focal_images",
    "gauss_rank",
    "load_system",
    "normalize",
    "osculating_dimension",
    "regular_point",
    "save_system",
    "second_fundamental_forms",
    "simultaneous_diagonalize",
    "singular_locus_on_generator",
    "tangent_space",
    "validate",
    "verify_leaf_linearity",
]
