"""
Gauge groups, homotopy tables and correction maps
"""

from .group import (
    AlgebraElement,
    CircleGroup,
    CyclicGroup,
    GaugeGroup,
    GroupElement,
    GroupKind,
    GroupSpec,
    OrthogonalGroup,
    SpecialUnitaryGroup,
    circle,
    create_group,
    cyclic,
    orthogonal,
    special_orthogonal,
    su2,
)
from .homotopy import (
    HomotopyClass,
    beta_correction,
    homotopy_group,
    so3_loop_class,
    winding_number,
)

__all__ = [
    # Backends
    "AlgebraElement",
    "CircleGroup",
    "CyclicGroup",
    "GaugeGroup",
    "GroupElement",
    "GroupKind",
    "GroupSpec",
    "OrthogonalGroup",
    "SpecialUnitaryGroup",
    "create_group",
    # Shortcuts
    "circle",
    "cyclic",
    "orthogonal",
    "special_orthogonal",
    "su2",
    # Homotopy
    "HomotopyClass",
    "beta_correction",
    "homotopy_group",
    "so3_loop_class",
    "winding_number",
]
