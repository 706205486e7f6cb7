"""Shared fixtures for the gaugeflow test suite"""

import pytest

from gaugeflow.config.settings import get_settings
from gaugeflow.services.fixtures import (
    full_triangle,
    hollow_triangle,
    seven_vertex_torus,
    tetrahedron_boundary,
    two_chart_complex,
)
from gaugeflow.topology.complex import SimplicialComplex, from_maximal_simplices


@pytest.fixture(scope="session", autouse=True)
def isolated_logs(tmp_path_factory):
    """Keep run logs out of the working tree"""
    settings = get_settings()
    original = settings.log_dir
    settings.log_dir = str(tmp_path_factory.mktemp("logs"))
    yield
    settings.log_dir = original


@pytest.fixture
def hollow() -> SimplicialComplex:
    return hollow_triangle()


@pytest.fixture
def triangle() -> SimplicialComplex:
    return full_triangle()


@pytest.fixture
def sphere() -> SimplicialComplex:
    return tetrahedron_boundary()


@pytest.fixture
def torus() -> SimplicialComplex:
    return seven_vertex_torus()


@pytest.fixture
def two_chart() -> SimplicialComplex:
    return two_chart_complex()


@pytest.fixture
def projective_plane() -> SimplicialComplex:
    """Six-vertex triangulation of the real projective plane"""
    return from_maximal_simplices(
        6,
        [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ],
    )
