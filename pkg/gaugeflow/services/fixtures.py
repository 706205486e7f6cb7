"""Named fixture complexes and experiment presets for demos and tests"""

from typing import Any, Callable, Dict, List, Tuple

from ..dynamics.ising import triangulated_lattice
from ..topology.complex import SimplicialComplex
from ..utils.errors import InputError


def hollow_triangle() -> SimplicialComplex:
    return SimplicialComplex([(0, 1), (1, 2), (0, 2)])


def full_triangle() -> SimplicialComplex:
    return SimplicialComplex([(0, 1, 2)])


def tetrahedron_boundary() -> SimplicialComplex:
    return SimplicialComplex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def full_tetrahedron() -> SimplicialComplex:
    return SimplicialComplex([(0, 1, 2, 3)])


def seven_vertex_torus() -> SimplicialComplex:
    """Minimal torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7"""
    triangles: List[Tuple[int, ...]] = []
    for i in range(7):
        triangles.append((i, (i + 1) % 7, (i + 3) % 7))
        triangles.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(triangles)


def grid_torus(size: int = 3) -> SimplicialComplex:
    """``size x size`` periodic grid with one diagonal per square"""
    if size < 3:
        raise InputError("a grid torus needs at least 3 x 3 vertices")
    triangles = []
    for r in range(size):
        for c in range(size):
            a = r * size + c
            b = r * size + (c + 1) % size
            d = ((r + 1) % size) * size + c
            e = ((r + 1) % size) * size + (c + 1) % size
            triangles.append((a, b, e))
            triangles.append((a, d, e))
    return SimplicialComplex(triangles)


def two_chart_complex() -> SimplicialComplex:
    """Two triangles glued along the edge 1-2"""
    return SimplicialComplex([(0, 1, 2), (1, 2, 3)])


def triangulated_circle(n: int = 6) -> SimplicialComplex:
    if n < 3:
        raise InputError("a triangulated circle needs at least 3 vertices")
    return SimplicialComplex([(i, (i + 1) % n) for i in range(n)])


def spin_lattice() -> SimplicialComplex:
    """Twelve spins on a triangulated 3 x 4 grid"""
    return triangulated_lattice(3, 4)


def single_vertex() -> SimplicialComplex:
    return SimplicialComplex([(0,)])


FIXTURE_COMPLEXES: Dict[str, Callable[[], SimplicialComplex]] = {
    "hollow_triangle": hollow_triangle,
    "full_triangle": full_triangle,
    "tetrahedron_boundary": tetrahedron_boundary,
    "full_tetrahedron": full_tetrahedron,
    "seven_vertex_torus": seven_vertex_torus,
    "grid_torus": grid_torus,
    "two_chart": two_chart_complex,
    "triangulated_circle": triangulated_circle,
    "spin_lattice": spin_lattice,
    "single_vertex": single_vertex,
    # the Z2 spin-glass example lives on the full triangle
    "z2_triangle": full_triangle,
}


def fixture_complex(name: str) -> SimplicialComplex:
    try:
        return FIXTURE_COMPLEXES[name]()
    except KeyError:
        raise InputError(
            f"unknown fixture {name!r}; choose from {sorted(FIXTURE_COMPLEXES)}"
        ) from None


# Experiment presets (plain JSON-compatible dicts)

EXPERIMENT_PRESETS: Dict[str, Dict[str, Any]] = {
    "minimal": {
        "complex": {"fixture": "hollow_triangle"},
        "stages": ["complex", "homology"],
        "seed": 0,
    },
    "z2_triangle": {
        "complex": {"fixture": "z2_triangle"},
        "group": {"kind": "cyclic", "n": 2},
        "ising": {"mode": "antiferromagnetic"},
        "field": {"covariance": [[1.0]]},
        "optimizer": {"method": "coordinate_descent", "max_iterations": 20},
        "stages": [
            "complex",
            "homology",
            "bundle",
            "connection",
            "curvature",
            "ising",
            "field",
            "optimize",
            "holonomy",
        ],
        "seed": 7,
    },
    "u1_two_chart": {
        "complex": {"fixture": "two_chart"},
        "group": {"kind": "u1", "rep_dim": 2},
        "bundle": {"mode": "random", "dims": [1], "density": 1.0},
        "connection": {"init": "random", "scale": 0.5},
        "network": {"max_edges": 3},
        "trigger": {"threshold": 0.1, "dim": 1, "probability": 1.0},
        "stages": [
            "complex",
            "homology",
            "bundle",
            "classes",
            "connection",
            "curvature",
            "field",
            "optimize",
            "network",
            "trigger",
        ],
        "seed": 3,
    },
}


def experiment_preset(name: str) -> Dict[str, Any]:
    try:
        preset = EXPERIMENT_PRESETS[name]
    except KeyError:
        raise InputError(
            f"unknown preset {name!r}; choose from {sorted(EXPERIMENT_PRESETS)}"
        ) from None
    return {key: value for key, value in preset.items()}
