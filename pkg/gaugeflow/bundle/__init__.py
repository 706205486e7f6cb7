"""
Semidiscrete principal bundles, obstruction assignment and associated fields
"""

from .assignment import (
    assign_cocycle_completion,
    assign_natural,
    assign_natural_so3,
    assign_natural_u1,
    assign_random,
)
from .bundle import (
    PrincipalBundle,
    Section,
    Slot,
    StructuralData,
    characteristic_classes,
    is_strictly_trivial,
    list_assignable_slots,
    obstruction_form,
    transition_apply,
    trivial_bundle,
)
from .fields import (
    AssociatedField,
    chart_complex,
    equivariance_residual,
    equivariant_differential,
    gauge_transform_field,
    transform_local_value,
    translated_differential,
)

__all__ = [
    # Bundles
    "PrincipalBundle",
    "Section",
    "Slot",
    "StructuralData",
    "characteristic_classes",
    "is_strictly_trivial",
    "list_assignable_slots",
    "obstruction_form",
    "transition_apply",
    "trivial_bundle",
    # Assignment
    "assign_cocycle_completion",
    "assign_natural",
    "assign_natural_so3",
    "assign_natural_u1",
    "assign_random",
    # Fields
    "AssociatedField",
    "chart_complex",
    "equivariance_residual",
    "equivariant_differential",
    "gauge_transform_field",
    "transform_local_value",
    "translated_differential",
]
