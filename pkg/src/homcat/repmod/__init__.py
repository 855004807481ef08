"""Windowed modules over the combinatorial categories and the functors acting on them."""

from .expr import (
    ExprError,
    Free,
    Perturb,
    Quot,
    Shift,
    SubSpan,
    Sum,
    TorsionQuot,
    Truncate,
    evaluate,
    expr_from_json,
    expr_to_json,
    max_object,
)
from .module import ActionModule, ModuleError, Quotient, Submodule, zero_module
from .ops import (
    ValidationResult,
    direct_sum,
    free_module,
    is_submodule,
    quotient,
    radical,
    restrict,
    shift,
    submodule_span,
    torsion_quotient,
    truncate,
    validate_module,
)

__all__ = [
    "ActionModule", "ExprError", "Free", "ModuleError", "Perturb", "Quot", "Quotient", "Shift", "SubSpan",
    "Submodule", "Sum", "TorsionQuot", "Truncate", "ValidationResult", "direct_sum", "evaluate",
    "expr_from_json", "expr_to_json", "free_module", "is_submodule", "max_object", "quotient", "radical",
    "restrict", "shift", "submodule_span", "torsion_quotient", "truncate", "validate_module", "zero_module",
]
