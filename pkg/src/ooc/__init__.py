"""Optical orthogonal code constructions, bounds and verification."""

from .bounds import (
    bound_am_oppw,
    bound_oppw,
    johnson_1d_cw,
    johnson_2d,
    nonbinary_johnson,
    optimality_report,
)
from .code_model import (
    CodeFamily,
    CodeMatrix,
    CodeParams,
    StructureClass,
    certify_mcp,
    classify,
    correlation,
    verify_family,
)
from .errors import OOCError
from .finite_field import GF, build_field, element_order, poly_eval, subgroup

__all__ = [
    "GF", "build_field", "subgroup", "poly_eval", "element_order",
    "CodeParams", "CodeMatrix", "CodeFamily", "StructureClass",
    "correlation", "certify_mcp", "classify", "verify_family",
    "johnson_2d", "nonbinary_johnson", "bound_am_oppw", "bound_oppw", "johnson_1d_cw",
    "optimality_report", "OOCError",
]
