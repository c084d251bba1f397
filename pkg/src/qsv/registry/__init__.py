"""Identity catalog: inventory, reduction lattice, and evaluation helpers."""

from .base import (
    ANALYTIC,
    COUNT,
    EXACT,
    FORMAL,
    FREE,
    MODES,
    Correction,
    Identity,
    ParameterSpec,
    bind_values,
    check_guards,
    context_for,
    count_param,
    evaluate_form,
    is_q_power,
)
from .catalog import lookup, registry
from .relations import (
    FINITE_PARTNERS,
    MUTATIONS,
    SPECIALIZATIONS,
    Mutation,
    Specialization,
)

__all__ = [
    "ANALYTIC",
    "COUNT",
    "EXACT",
    "FORMAL",
    "FREE",
    "MODES",
    "Correction",
    "Identity",
    "ParameterSpec",
    "bind_values",
    "check_guards",
    "context_for",
    "count_param",
    "evaluate_form",
    "is_q_power",
    "lookup",
    "registry",
    "FINITE_PARTNERS",
    "MUTATIONS",
    "SPECIALIZATIONS",
    "Mutation",
    "Specialization",
]
