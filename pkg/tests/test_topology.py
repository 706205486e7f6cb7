"""
Tests for complexes, k-paths and simplicial homology
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugeflow.services.fixtures import grid_torus
from gaugeflow.topology.complex import (
    OrientedSimplex,
    PointCloud,
    SimplicialComplex,
    build_vietoris_rips,
    common_faces,
    faced_simplices,
    from_maximal_simplices,
    orientation_equal,
    permutation_sign,
)
from gaugeflow.topology.homology import (
    betti_numbers,
    boundary_matrix,
    simplicial_homology,
    smith_normal_form,
)
from gaugeflow.topology.paths import (
    KPath,
    SearchVerdict,
    chain_boundary,
    compose,
    dd_empty_witness,
    inverse,
    is_cycle,
)
from gaugeflow.utils.errors import InputError


class TestSimplicialComplex:
    """Construction, closure and orientation"""

    def test_face_closure(self, triangle):
        """The full triangle holds its edges and vertices"""
        assert triangle.count(0) == 3
        assert triangle.count(1) == 3
        assert triangle.count(2) == 1
        assert (0, 2) in triangle
        assert triangle.is_face_closed()

    def test_faced_simplices_are_maximal(self, two_chart):
        faced = [s.key for s in faced_simplices(two_chart)]
        assert faced == [(0, 1, 2), (1, 2, 3)], f"Unexpected faced simplices {faced}"

    def test_isolated_vertex_is_faced(self):
        complex_ = from_maximal_simplices(3, [[0, 1]])
        assert complex_.faced() == ((0, 1), (2,))

    def test_out_of_range_vertex_rejected(self):
        with pytest.raises(InputError):
            from_maximal_simplices(2, [[0, 5]])

    def test_repeated_vertex_rejected(self):
        with pytest.raises(InputError):
            SimplicialComplex([(0, 0, 1)])

    def test_common_faces_of_glued_triangles(self, two_chart):
        first, second = faced_simplices(two_chart)
        faces = common_faces(first, second, two_chart)
        assert [(f.key, dim) for f, dim in faces] == [((1,), 0), ((2,), 0), ((1, 2), 1)]

    def test_euler_characteristics(self, hollow, sphere, torus):
        assert hollow.euler_characteristic() == 0
        assert sphere.euler_characteristic() == 2
        assert torus.euler_characteristic() == 0

    def test_dict_form_keeps_complex(self, two_chart):
        assert SimplicialComplex.from_dict(two_chart.to_dict()) == two_chart

    def test_orientation_sign(self):
        assert permutation_sign((0, 1, 2)) == 1
        assert permutation_sign((1, 0, 2)) == -1
        assert orientation_equal((0, 1, 2), (1, 2, 0))
        assert not orientation_equal((0, 1, 2), (0, 2, 1))

    def test_oriented_simplex_faces(self):
        """Boundary of (0 1 2) is (1 2) - (0 2) + (0 1)"""
        faces = OrientedSimplex((0, 1, 2)).faces()
        assert [(f.key, f.orientation) for f in faces] == [
            ((1, 2), 1),
            ((0, 2), -1),
            ((0, 1), 1),
        ]

    def test_ordered_from_keeps_orientation(self):
        simplex = OrientedSimplex((0, 1, 2))
        ordering = simplex.ordered_from(2)
        assert ordering[0] == 2
        assert orientation_equal(ordering, (0, 1, 2))


class TestVietorisRips:
    def test_square_gives_a_loop(self):
        """Unit square with radius below the diagonal has one 1-cycle"""
        cloud = PointCloud.from_array([[0, 0], [1, 0], [1, 1], [0, 1]])
        complex_ = build_vietoris_rips(cloud, radius=1.1, max_dim=2)
        assert complex_.count(1) == 4
        assert complex_.count(2) == 0
        assert simplicial_homology(complex_, 1).rank == 1

    def test_large_radius_fills_simplex(self):
        cloud = PointCloud.from_array([[0, 0], [1, 0], [0, 1]])
        complex_ = build_vietoris_rips(cloud, radius=5.0, max_dim=2)
        assert complex_.count(2) == 1

    def test_non_positive_radius_rejected(self):
        cloud = PointCloud.from_array([[0, 0], [1, 0]])
        with pytest.raises(InputError):
            build_vietoris_rips(cloud, radius=0.0, max_dim=1)


class TestHomology:
    """Integer homology of the fixture complexes"""

    def test_hollow_triangle(self, hollow):
        assert simplicial_homology(hollow, 0).rank == 1
        assert simplicial_homology(hollow, 1).rank == 1

    def test_filled_triangle_is_acyclic(self, triangle):
        assert betti_numbers(triangle) == [1, 0, 0]

    def test_two_sphere(self, sphere):
        assert betti_numbers(sphere) == [1, 0, 1]

    def test_torus(self, torus):
        assert betti_numbers(torus) == [1, 2, 1]
        assert simplicial_homology(torus, 1).torsion == ()

    def test_grid_torus_matches_minimal_torus(self):
        assert betti_numbers(grid_torus(3)) == [1, 2, 1]

    def test_projective_plane_torsion(self, projective_plane):
        """H_1(RP^2) = Z_2 and H_2(RP^2) = 0"""
        h1 = simplicial_homology(projective_plane, 1)
        assert h1.rank == 0
        assert h1.torsion == (2,), f"Expected Z2 torsion, got {h1.torsion}"
        assert simplicial_homology(projective_plane, 2).is_trivial

    def test_degree_above_dimension_is_trivial(self, hollow):
        assert simplicial_homology(hollow, 3).is_trivial

    def test_negative_degree_rejected(self, hollow):
        with pytest.raises(InputError):
            simplicial_homology(hollow, -1)

    def test_boundary_of_boundary_vanishes(self, sphere):
        product = boundary_matrix(sphere, 1) @ boundary_matrix(sphere, 2)
        assert not np.any(product)

    def test_smith_form_invariant_factors(self):
        form = smith_normal_form(np.array([[2, 4], [6, 8]]))
        assert form.invariant_factors == [2, 4]
        reconstructed = form.U.dot(np.array([[2, 4], [6, 8]], dtype=object)).dot(form.V)
        assert np.array_equal(reconstructed.astype(int), form.D.astype(int))

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4
        )
    )
    def test_smith_form_decomposes(self, rows):
        matrix = np.array(rows, dtype=object)
        form = smith_normal_form(matrix)
        assert np.array_equal(form.U.dot(matrix).dot(form.V), form.D)
        factors = form.invariant_factors
        assert all(f > 0 for f in factors)
        assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


class TestKPaths:
    """Free reduction, cycles and double-boundary witnesses"""

    def test_adjacent_inverses_cancel(self):
        assert KPath.of((0, 1), (1, 0)).is_empty

    def test_path_times_inverse_is_identity(self):
        p = KPath.of((0, 1), (1, 2))
        assert compose(p, inverse(p)).is_empty

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(InputError):
            KPath.of((0, 1), (0, 1, 2))

    def test_single_edge_is_not_a_cycle(self):
        assert is_cycle(KPath.of((0, 1))) is SearchVerdict.NO

    def test_edge_loop_is_a_cycle(self):
        loop = KPath.of((0, 1), (1, 2), (2, 0))
        assert chain_boundary(loop) == {}
        assert is_cycle(loop) is SearchVerdict.YES

    def test_empty_path_is_a_cycle(self):
        assert is_cycle(KPath()) is SearchVerdict.YES

    def test_double_boundary_of_a_triangle(self):
        witness = dd_empty_witness(KPath.of((0, 1, 2)))
        assert witness.found, f"No witness: {witness.status}"

    def test_double_boundary_needs_dimension_two(self):
        with pytest.raises(InputError):
            dd_empty_witness(KPath.of((0, 1)))
