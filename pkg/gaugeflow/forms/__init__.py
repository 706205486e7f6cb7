"""
Discrete differential forms, cup products and cochain cohomology
"""

from .cohomology import (
    ClassVerdict,
    classify_cochain,
    coboundary_matrix,
    coboundary_of_vertex_values,
    coboundary_values,
    cochain_cohomology,
    is_coboundary,
    is_cocycle,
)
from .cup import (
    Cochain,
    ExteriorVector,
    abelian_leibniz_residual,
    coboundary,
    cup_abelian_g,
    cup_product,
    cup_real,
    cup_vector,
    exterior_cochain,
    leibniz_defect,
    random_rational_cochain,
)
from .forms import (
    GValuedForm,
    ModuleActionCheck,
    VValuedForm,
    as_oriented,
    canonical_differential_value,
    differential_g,
    differential_g_point_based,
    differential_g_realizations,
    differential_v,
    g_action_on_vform,
    is_closed_g,
    local_pullback,
    module_action,
    point_based_product,
)

__all__ = [
    # Forms
    "GValuedForm",
    "ModuleActionCheck",
    "VValuedForm",
    "as_oriented",
    "canonical_differential_value",
    "differential_g",
    "differential_g_point_based",
    "differential_g_realizations",
    "differential_v",
    "g_action_on_vform",
    "is_closed_g",
    "local_pullback",
    "module_action",
    "point_based_product",
    # Cup products
    "Cochain",
    "ExteriorVector",
    "abelian_leibniz_residual",
    "coboundary",
    "cup_abelian_g",
    "cup_product",
    "cup_real",
    "cup_vector",
    "exterior_cochain",
    "leibniz_defect",
    "random_rational_cochain",
    # Cohomology
    "ClassVerdict",
    "classify_cochain",
    "coboundary_matrix",
    "coboundary_of_vertex_values",
    "coboundary_values",
    "cochain_cohomology",
    "is_coboundary",
    "is_cocycle",
]
