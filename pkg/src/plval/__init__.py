"""Exact piecewise-linear functions on polyhedra and their Euler characteristic valuation."""

from .exact import AffineFunctional, GeometryError, Rational, affine_extension, barycentric_coordinates
from .hats import HatDecomposition, decompose, hat, hat_meet_reduction, is_hat_of
from .pl import (
    NegativeFunction,
    PLFunction,
    common_linearization,
    equals,
    evaluate,
    is_nonnegative,
    is_zero,
    join,
    lattice_op,
    linear_combination,
    meet,
    signed_parts,
    zero_set_subcomplex,
)
from .refinement import common_refinement, split_by_hyperplane
from .simplicial import (
    SimplicialComplex,
    carrier,
    derived_complex,
    euler_characteristic,
    simplicial_neighbourhood,
    supplement,
    validate,
)
from .valuation import ValuationReport, alpha, alpha_plus, alpha_plus_recursive

__version__ = "0.1.0"

__all__ = [
    "AffineFunctional",
    "GeometryError",
    "HatDecomposition",
    "NegativeFunction",
    "PLFunction",
    "Rational",
    "SimplicialComplex",
    "ValuationReport",
    "affine_extension",
    "alpha",
    "alpha_plus",
    "alpha_plus_recursive",
    "barycentric_coordinates",
    "carrier",
    "common_linearization",
    "common_refinement",
    "decompose",
    "derived_complex",
    "equals",
    "euler_characteristic",
    "evaluate",
    "hat",
    "hat_meet_reduction",
    "is_hat_of",
    "is_nonnegative",
    "is_zero",
    "join",
    "lattice_op",
    "linear_combination",
    "meet",
    "signed_parts",
    "simplicial_neighbourhood",
    "split_by_hyperplane",
    "supplement",
    "validate",
    "zero_set_subcomplex",
]
