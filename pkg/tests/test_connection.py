"""
Tests for connections, transport, holonomy and curvature
"""

import numpy as np
import pytest

from gaugeflow.bundle.bundle import Section, Slot, StructuralData, trivial_bundle
from gaugeflow.connection.connection import (
    Connection,
    FiberPoint,
    cotree_edges,
    flat_connection,
    flat_from_holonomy,
    gauge_between,
    gauge_transform_connection,
    holonomy_set,
    horizontal_lift,
    is_horizontal,
    parallel_transport,
    random_connection,
    simple_cycles_through,
    spanning_tree_edges,
    total_phi,
    walk_edges,
)
from gaugeflow.connection.curvature import (
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
from gaugeflow.forms.forms import GValuedForm, VValuedForm
from gaugeflow.groups.group import circle, special_orthogonal
from gaugeflow.groups.homotopy import HomotopyClass
from gaugeflow.services.fixtures import full_tetrahedron
from gaugeflow.utils.errors import InputError, UnsupportedError


@pytest.fixture
def so3_triangle_conn(triangle):
    group = special_orthogonal(3)
    bundle = trivial_bundle(triangle, group)
    return random_connection(bundle, np.random.default_rng(17))


def _shared_edge_transport(conn, chart):
    """Transport along 1 -> 2 through ``chart``, read in the frame of chart 0"""
    return parallel_transport(conn, [(1, 2)], [chart], start_chart=0, end_chart=0)


class TestLocalExpressions:
    """Local expressions and their transitions"""

    def test_reversed_edge_is_inverse(self, so3_triangle_conn):
        conn = so3_triangle_conn
        forward = conn.phi(0, 1)
        assert conn.group.multiply(conn.phi(1, 0), forward).is_identity()

    def test_random_connection_respects_transitions(self, two_chart):
        group = special_orthogonal(3)
        rng = np.random.default_rng(2)
        bundle = trivial_bundle(two_chart, group)
        bundle = bundle.with_frames(Section.random(bundle, rng))
        conn = random_connection(bundle, rng)
        assert conn.transition_residual() < 1e-9

    def test_small_scale_stays_near_identity(self, triangle):
        group = special_orthogonal(3)
        conn = random_connection(
            trivial_bundle(triangle, group), np.random.default_rng(3), scale=1e-3
        )
        for x, y in triangle.simplices(1):
            assert group.distance_residual(conn.phi(x, y), group.identity()) < 0.05


class TestTotalSpace:
    """Fiber points, horizontal lifts and projections"""

    def test_horizontal_lift_is_horizontal(self, so3_triangle_conn):
        conn = so3_triangle_conn
        p = FiberPoint(0, conn.group.random_element(np.random.default_rng(5)), 0)
        q = horizontal_lift(conn, p, 2)
        assert is_horizontal(conn, p, q)
        assert q.vertex == 2

    def test_vertical_edge_is_fiber_difference(self, so3_triangle_conn):
        conn = so3_triangle_conn
        rng = np.random.default_rng(6)
        g, h = conn.group.random_element(rng), conn.group.random_element(rng)
        value = total_phi(conn, FiberPoint(1, g, 0), FiberPoint(1, h, 0))
        assert value.close_to(conn.group.multiply(h, g.inv()))

    def test_points_in_different_charts_rejected(self, two_chart):
        group = circle()
        conn = flat_connection(trivial_bundle(two_chart, group))
        with pytest.raises(InputError):
            total_phi(
                conn, FiberPoint(1, group.identity(), 0), FiberPoint(2, group.identity(), 1)
            )


class TestTransportAndHolonomy:
    """Parallel transport, simple cycles and holonomy sets"""

    def test_cycle_counts_on_complete_graph(self):
        tetrahedron = full_tetrahedron()
        assert len(simple_cycles_through(tetrahedron, 0, 3)) == 3
        assert len(simple_cycles_through(tetrahedron, 0, 4)) == 6

    def test_unknown_vertex_rejected(self, triangle):
        with pytest.raises(InputError):
            simple_cycles_through(triangle, 9, 3)

    def test_u1_transport_adds_angles(self, hollow):
        group = circle()
        e = group.element
        conn = flat_from_holonomy(trivial_bundle(hollow, group), {(1, 2): e(0.4)})
        value = parallel_transport(conn, walk_edges([0, 1, 2, 0]))
        assert value.close_to(e(0.4))

    def test_broken_path_rejected(self, so3_triangle_conn):
        with pytest.raises(InputError):
            parallel_transport(so3_triangle_conn, [(0, 1), (2, 0)])

    def test_empty_path_is_identity(self, so3_triangle_conn):
        assert parallel_transport(so3_triangle_conn, []).is_identity()

    def test_holonomy_of_flat_connection_on_loop(self, hollow):
        group = circle()
        conn = flat_from_holonomy(trivial_bundle(hollow, group), {(1, 2): group.element(0.7)})
        holonomy = holonomy_set(conn, 0, max_length=3, product_depth=2)
        assert holonomy.contains(group.element(0.7))
        assert holonomy.contains(group.element(-0.7))
        summary = holonomy.summary()
        assert summary["cycles"] == 1
        assert not summary["trivial"]
        assert "angles" in summary

    def test_section_connection_has_trivial_holonomy(self, torus):
        group = special_orthogonal(3)
        rng = np.random.default_rng(13)
        bundle = trivial_bundle(torus, group)
        section = Section.from_vertex_values(
            bundle, {v: group.random_element(rng) for v in torus.vertices}
        )
        conn = flat_connection(bundle, section)
        holonomy = holonomy_set(conn, 0, max_length=4, product_depth=1)
        assert holonomy.summary()["trivial"], "a global section makes every loop trivial"

    def test_itineraries_agree_without_obstructions(self, two_chart):
        group = special_orthogonal(3)
        rng = np.random.default_rng(60)
        bundle = trivial_bundle(two_chart, group)
        bundle = bundle.with_frames(Section.random(bundle, rng))
        conn = random_connection(bundle, rng)
        first, second = bundle.chart_index((0, 1, 2)), bundle.chart_index((1, 2, 3))

        path = [(0, 1), (1, 2), (2, 3)]
        ends = {"start_chart": first, "end_chart": second}
        early = parallel_transport(conn, path, [first, second, second], **ends)
        late = parallel_transport(conn, path, [first, first, second], **ends)
        assert group.distance_residual(early, late) < 1e-11

        one = _shared_edge_transport(conn, first)
        other = _shared_edge_transport(conn, second)
        assert group.distance_residual(one, other) < 1e-11

    @pytest.mark.parametrize(
        "make_group", [circle, special_orthogonal], ids=["u1", "so3"]
    )
    def test_itineraries_differ_by_beta_conjugation(self, two_chart, make_group):
        """A class on the shared edge conjugates its value in the second chart"""
        group = make_group() if make_group is circle else make_group(3)
        slot = Slot((0, 1), (1, 2), 1)
        structure = StructuralData(group).with_entry(slot, HomotopyClass.of(group, 1, 1))
        bundle = trivial_bundle(two_chart, group).with_structure(structure)
        assert bundle.chart_index((1, 2, 3)) == 1
        conn = random_connection(bundle, np.random.default_rng(61))
        beta = bundle.beta(0, 1, (1, 2))
        assert not beta.is_identity()

        one = _shared_edge_transport(conn, 0)
        other = _shared_edge_transport(conn, 1)
        assert group.distance_residual(other, group.conjugate(beta, one)) < 1e-11
        if group.is_abelian:
            assert group.distance_residual(one, other) < 1e-11
        else:
            assert group.distance_residual(one, other) > 1e-6


class TestFlatConnections:
    """Spanning-tree gauge and prescribed co-tree values"""

    def test_tree_and_cotree_partition_edges(self, torus):
        tree = spanning_tree_edges(torus)
        cotree = cotree_edges(torus)
        assert len(tree) == len(torus.vertices) - 1
        assert set(tree) | set(cotree) == set(torus.simplices(1))
        assert not set(tree) & set(cotree)

    def test_tree_edge_prescription_rejected(self, hollow):
        group = circle()
        with pytest.raises(InputError):
            flat_from_holonomy(trivial_bundle(hollow, group), {(0, 1): group.element(0.3)})

    def test_curved_prescription_rejected(self, triangle):
        group = circle()
        with pytest.raises(InputError):
            flat_from_holonomy(trivial_bundle(triangle, group), {(1, 2): group.element(0.5)})

    def test_unconstrained_solution_is_flat(self, torus):
        group = special_orthogonal(3)
        conn = flat_from_holonomy(trivial_bundle(torus, group), {})
        assert is_flat(conn)


class TestGaugeTransforms:
    """Gauge transforms of connections and recovery of the transform"""

    def test_gauge_between_recovers_transform(self, so3_triangle_conn, triangle):
        conn = so3_triangle_conn
        rng = np.random.default_rng(21)
        gauge = GValuedForm.random(triangle, 0, conn.group, rng)
        moved = gauge_transform_connection(conn, gauge)
        match = gauge_between(conn, moved, root_value=gauge((0,)))
        assert match.residual < 1e-9
        for v in triangle.vertices:
            assert match.gauge((v,)).close_to(gauge((v,)))

    def test_unrelated_connections_leave_residual(self, triangle):
        group = special_orthogonal(3)
        bundle = trivial_bundle(triangle, group)
        first = random_connection(bundle, np.random.default_rng(1))
        second = random_connection(bundle, np.random.default_rng(2))
        assert gauge_between(first, second).residual > 1e-6

    def test_scalar_curvature_is_gauge_invariant(self, so3_triangle_conn, triangle):
        conn = so3_triangle_conn
        gauge = GValuedForm.random(triangle, 0, conn.group, np.random.default_rng(22))
        moved = gauge_transform_connection(conn, gauge)
        assert scalar_curvature(moved, (0, 1, 2)) == pytest.approx(
            scalar_curvature(conn, (0, 1, 2))
        )


class TestCurvature:
    """Curvature, its base-point changes and the Bianchi residual"""

    def test_total_space_matches_local(self, so3_triangle_conn):
        conn = so3_triangle_conn
        for base in (0, 1, 2):
            local = curvature(conn, (0, 1, 2), base)
            assert curvature_total_space(conn, (0, 1, 2), base).close_to(local)

    def test_vertex_change_rotates_base(self, so3_triangle_conn):
        conn = so3_triangle_conn
        changed = curvature_vertex_change(conn, (0, 1, 2), 2)
        assert changed.close_to(curvature(conn, (0, 1, 2), base=2))

    def test_vertex_change_needs_last_vertex(self, so3_triangle_conn):
        with pytest.raises(InputError):
            curvature_vertex_change(so3_triangle_conn, (0, 1, 2), 1)

    def test_curvature_needs_triangle(self, so3_triangle_conn):
        with pytest.raises(InputError):
            curvature(so3_triangle_conn, (0, 1))

    def test_u1_curvature_sums_edges(self, triangle):
        group = circle()
        e = group.element
        values = {(0, 1): e(0.1), (1, 2): e(0.2), (0, 2): e(0.05)}
        conn = Connection(trivial_bundle(triangle, group), {0: GValuedForm(1, group, values)})
        assert curvature(conn, (0, 1, 2)).close_to(e(0.25))
        assert not is_flat(conn)

    def test_curvature_map_has_one_row_per_triangle(self, torus):
        conn = random_connection(
            trivial_bundle(torus, special_orthogonal(3)), np.random.default_rng(4)
        )
        frame = curvature_map(conn, threads=2)
        assert len(frame) == len(torus.simplices(2))
        assert list(frame.columns) == ["triangle", "base_vertex", "scalar_curvature"]
        assert frame["scalar_curvature"].between(-1.0 - 1e-9, 3.0 + 1e-9).all()

    def test_bianchi_abelian_is_exact(self):
        group = circle()
        bundle = trivial_bundle(full_tetrahedron(), group)
        conn = random_connection(bundle, np.random.default_rng(40))
        assert bianchi_residual(conn, (0, 1, 2, 3)) < 1e-9

    def test_bianchi_flat_nonabelian(self):
        group = special_orthogonal(3)
        rng = np.random.default_rng(41)
        bundle = trivial_bundle(full_tetrahedron(), group)
        section = Section.from_vertex_values(
            bundle, {v: group.random_element(rng) for v in range(4)}
        )
        assert bianchi_residual(flat_connection(bundle, section), (0, 1, 2, 3)) < 1e-9

    @pytest.mark.parametrize("make_group", [special_orthogonal, circle], ids=["so3", "u1"])
    def test_bianchi_curved_connections(self, make_group):
        """The point-based value is the identity for uniformly random connections"""
        group = make_group(3) if make_group is special_orthogonal else make_group()
        bundle = trivial_bundle(full_tetrahedron(), group)
        for seed in range(200):
            conn = random_connection(bundle, np.random.default_rng(seed))
            assert not curvature(conn, (0, 1, 2)).is_identity(1e-6), f"seed {seed} is flat"
            for base in (0, 2):
                residual = bianchi_residual(conn, (0, 1, 2, 3), base=base)
                assert residual < 1e-11, f"seed {seed}, base {base}: {residual}"

    def test_bianchi_on_odd_vertex_ordering(self):
        group = special_orthogonal(3)
        conn = random_connection(
            trivial_bundle(full_tetrahedron(), group), np.random.default_rng(300)
        )
        assert bianchi_residual(conn, (1, 0, 2, 3)) < 1e-11


class TestCovariantDerivatives:
    """Total-space and local covariant derivatives"""

    def test_vector_zero_form(self, so3_triangle_conn, triangle):
        conn = so3_triangle_conn
        rng = np.random.default_rng(50)
        v = VValuedForm.from_function(triangle, 0, 3, lambda _: rng.normal(size=3))
        np.testing.assert_allclose(
            covariant_derivative(conn, v, (0, 1)),
            local_covariant_derivative(conn, v, (0, 1)),
            atol=1e-12,
        )
        expected = conn.group.act_on_vector(conn.phi(0, 1).inv(), v((1,))) - v((0,))
        np.testing.assert_allclose(covariant_derivative(conn, v, (0, 1)), expected, atol=1e-12)

    def test_group_one_form(self, so3_triangle_conn, triangle):
        conn = so3_triangle_conn
        omega = GValuedForm.random(triangle, 1, conn.group, np.random.default_rng(51))
        total = covariant_derivative(conn, omega, (0, 1, 2))
        local = local_covariant_derivative(conn, omega, (0, 1, 2))
        assert total.close_to(local)

    def test_flat_identity_connection_is_plain_differential(self, triangle):
        group = circle(rep_dim=2)
        conn = flat_connection(trivial_bundle(triangle, group))
        v = VValuedForm(0, 2, {(0,): [1.0, 2.0], (1,): [3.0, 5.0], (2,): [0.0, 0.0]})
        np.testing.assert_allclose(covariant_derivative(conn, v, (0, 1)), [2.0, 3.0])

    def test_vertex_change_for_vectors(self, so3_triangle_conn, triangle):
        conn = so3_triangle_conn
        rng = np.random.default_rng(52)
        v = VValuedForm.from_function(triangle, 0, 3, lambda _: rng.normal(size=3))
        at_y = covariant_vertex_change(conn, v, (0, 1))
        expected = v((1,)) - conn.group.act_on_vector(conn.phi(0, 1), v((0,)))
        np.testing.assert_allclose(at_y, expected, atol=1e-12)

    def test_vertex_change_higher_degree_unsupported(self, so3_triangle_conn, triangle):
        v = VValuedForm.zeros(triangle, 1, 3)
        with pytest.raises(UnsupportedError):
            covariant_vertex_change(so3_triangle_conn, v, (0, 1))

    def test_wrong_simplex_size(self, so3_triangle_conn, triangle):
        v = VValuedForm.zeros(triangle, 0, 3)
        with pytest.raises(InputError):
            covariant_derivative(so3_triangle_conn, v, (0, 1, 2))


class TestTorsion:
    """Torsion from the topological corrections"""

    def test_trivial_bundle_has_no_torsion(self, triangle):
        group = circle()
        conn = flat_connection(trivial_bundle(triangle, group))
        assert torsion(conn, 1, (0, 1)).is_identity()

    def test_degree_out_of_range(self, so3_triangle_conn):
        with pytest.raises(UnsupportedError):
            torsion(so3_triangle_conn, 4, (0, 1))

    def test_face_must_be_in_base(self, so3_triangle_conn):
        with pytest.raises(InputError):
            torsion(so3_triangle_conn, 1, (0, 5))
