"""Totally real number fields with exact integral bases."""

from .construct import are_isomorphic, compositum_quadratic, integral_roots_in, isomorphism_classes, quadratic_field
from .field import Element, NumberField
from .order import maximal_order
from .positive import (
    indecomposability_by_norm,
    indecomposability_by_norm_primitive_field,
    is_indecomposable,
    is_square_mod_2,
    squares_mod_2,
    totally_positive_below,
    totally_positive_upto_trace,
    units_heuristic,
)

__all__ = [
    "Element", "NumberField", "maximal_order", "compositum_quadratic", "quadratic_field",
    "are_isomorphic", "integral_roots_in", "isomorphism_classes",
    "indecomposability_by_norm", "indecomposability_by_norm_primitive_field", "is_indecomposable",
    "is_square_mod_2", "squares_mod_2", "totally_positive_below", "totally_positive_upto_trace",
    "units_heuristic",
]
