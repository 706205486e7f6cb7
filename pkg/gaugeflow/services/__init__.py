"""Fixture complexes and experiment presets"""

from .fixtures import (
    EXPERIMENT_PRESETS,
    FIXTURE_COMPLEXES,
    experiment_preset,
    fixture_complex,
    full_tetrahedron,
    full_triangle,
    grid_torus,
    hollow_triangle,
    seven_vertex_torus,
    single_vertex,
    spin_lattice,
    tetrahedron_boundary,
    triangulated_circle,
    two_chart_complex,
)
from .loaders import (
    build_complex,
    distribution_from,
    load_bundle,
    load_complex,
    load_connection,
    load_field,
    load_group,
)

__all__ = [
    # Fixtures
    "EXPERIMENT_PRESETS",
    "FIXTURE_COMPLEXES",
    "experiment_preset",
    "fixture_complex",
    "full_tetrahedron",
    "full_triangle",
    "grid_torus",
    "hollow_triangle",
    "seven_vertex_torus",
    "single_vertex",
    "spin_lattice",
    "tetrahedron_boundary",
    "triangulated_circle",
    "two_chart_complex",
    # Loaders
    "build_complex",
    "distribution_from",
    "load_bundle",
    "load_complex",
    "load_connection",
    "load_field",
    "load_group",
]
