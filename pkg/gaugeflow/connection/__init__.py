"""
Connections, parallel transport, holonomy and curvature
"""

from .connection import (
    Connection,
    FiberPoint,
    GaugeMatch,
    HolonomySet,
    TypeIISimplex,
    cotree_edges,
    flat_connection,
    flat_from_holonomy,
    gauge_between,
    gauge_transform_connection,
    holonomy_set,
    horizontal_lift,
    horizontal_projection,
    is_horizontal,
    parallel_transport,
    random_connection,
    simple_cycles_through,
    spanning_tree_edges,
    total_phi,
    walk_edges,
)
from .curvature import (
    bianchi_residual,
    covariant_derivative,
    covariant_vertex_change,
    curvature,
    curvature_map,
    curvature_total_space,
    curvature_vertex_change,
    is_flat,
    local_covariant_derivative,
    scalar_curvature,
    torsion,
)

__all__ = [
    # Connections
    "Connection",
    "random_connection",
    "gauge_transform_connection",
    "gauge_between",
    "GaugeMatch",
    # Total space
    "FiberPoint",
    "TypeIISimplex",
    "total_phi",
    "is_horizontal",
    "horizontal_lift",
    "horizontal_projection",
    # Transport and holonomy
    "parallel_transport",
    "walk_edges",
    "simple_cycles_through",
    "holonomy_set",
    "HolonomySet",
    # Flat connections
    "flat_connection",
    "flat_from_holonomy",
    "spanning_tree_edges",
    "cotree_edges",
    # Curvature
    "curvature",
    "scalar_curvature",
    "curvature_total_space",
    "curvature_vertex_change",
    "curvature_map",
    "is_flat",
    "covariant_derivative",
    "local_covariant_derivative",
    "covariant_vertex_change",
    "bianchi_residual",
    "torsion",
]
