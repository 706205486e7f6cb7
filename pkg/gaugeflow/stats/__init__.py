"""
Moments, cumulants and invariant polynomials
"""

from .invariants import (
    DegreesTable,
    LieFamily,
    ad_invariance_residual,
    admits_odd_invariant,
    degrees_table,
    invariant_degrees,
    moment_preservation_check,
    moment_preservation_residual,
    sample_so_g,
    structure_constants,
    symmetrized_trace_tensor,
)
from .moments import (
    MomentTable,
    central_moments,
    cumulant_tensor,
    cumulants,
    empirical_cumulants,
    gaussian_moment_4,
    gaussian_moment_table,
    max_abs_by_order,
    multi_indices,
    raw_moments,
)

__all__ = [
    # Moments
    "MomentTable",
    "multi_indices",
    "raw_moments",
    "central_moments",
    "cumulants",
    "cumulant_tensor",
    "max_abs_by_order",
    "empirical_cumulants",
    "gaussian_moment_4",
    "gaussian_moment_table",
    # Invariants
    "LieFamily",
    "DegreesTable",
    "invariant_degrees",
    "degrees_table",
    "admits_odd_invariant",
    "moment_preservation_check",
    "moment_preservation_residual",
    "sample_so_g",
    "structure_constants",
    "symmetrized_trace_tensor",
    "ad_invariance_residual",
]
