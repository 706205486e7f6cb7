"""
Tests for discrete forms, cup products and cochain cohomology
"""

from fractions import Fraction

import numpy as np
import pytest

from gaugeflow.forms.cohomology import (
    ClassVerdict,
    classify_cochain,
    coboundary_of_vertex_values,
    cochain_cohomology,
    is_coboundary,
)
from gaugeflow.forms.cup import (
    Cochain,
    ExteriorVector,
    abelian_leibniz_residual,
    cup_abelian_g,
    cup_product,
    cup_real,
    exterior_cochain,
    leibniz_defect,
    random_rational_cochain,
)
from gaugeflow.forms.forms import (
    GValuedForm,
    VValuedForm,
    canonical_differential_value,
    differential_g,
    differential_g_realizations,
    differential_v,
    g_action_on_vform,
    is_closed_g,
    local_pullback,
    module_action,
)
from gaugeflow.groups.group import circle, cyclic, special_orthogonal
from gaugeflow.services.fixtures import full_tetrahedron
from gaugeflow.topology.homology import AbelianGroup
from gaugeflow.topology.paths import SearchVerdict
from gaugeflow.utils.errors import InputError, UnsupportedError

Z = AbelianGroup((0,))
Z2 = AbelianGroup((2,))


class TestVectorForms:
    """Orientation handling and the V-valued differential"""

    def test_reversed_orientation_negates(self, triangle):
        f = VValuedForm(1, 2, {(0, 1): [1.0, 2.0]})
        np.testing.assert_allclose(f((1, 0)), [-1.0, -2.0])

    def test_values_given_on_reversed_simplex(self):
        f = VValuedForm(1, 1, {(2, 0): [3.0]})
        np.testing.assert_allclose(f((0, 2)), [-3.0])

    def test_dd_vanishes(self):
        tetra = full_tetrahedron()
        rng = np.random.default_rng(0)
        f = VValuedForm.from_function(tetra, 1, 3, lambda _: rng.normal(size=3))
        ddf = differential_v(differential_v(f, tetra), tetra)
        assert ddf.max_abs() < 1e-12

    def test_differential_of_vertex_values(self, hollow):
        f = VValuedForm(0, 1, {(0,): [1.0], (1,): [4.0], (2,): [2.0]})
        df = differential_v(f, hollow)
        np.testing.assert_allclose(df((0, 1)), [3.0])
        np.testing.assert_allclose(df((1, 2)), [-2.0])

    def test_module_action_split_is_exact(self, triangle):
        v = VValuedForm(0, 2, {(0,): [1.0, 0.0], (1,): [0.5, 2.0], (2,): [-1.0, 3.0]})
        check = module_action({0: 2.0, 1: -1.0, 2: 0.5}, v, triangle)
        assert check.residual < 1e-12

    def test_module_action_needs_every_vertex(self, triangle):
        v = VValuedForm.zeros(triangle, 0, 1)
        with pytest.raises(InputError):
            module_action({0: 1.0}, v, triangle)

    def test_group_action_dimension_mismatch(self, triangle):
        omega = GValuedForm.identity(triangle, 1, special_orthogonal(3))
        with pytest.raises(InputError):
            g_action_on_vform(omega, VValuedForm.zeros(triangle, 1, 2))

    def test_group_action_rotates(self, hollow):
        G = circle()
        omega = GValuedForm(1, G, {(0, 1): G.element(np.pi / 2)})
        v = VValuedForm(1, 2, {(0, 1): [1.0, 0.0]})
        rotated = g_action_on_vform(omega, v)
        np.testing.assert_allclose(rotated((0, 1)), [0.0, 1.0], atol=1e-12)

    def test_local_pullback_along_rotation(self, triangle):
        f = VValuedForm.from_function(triangle, 1, 1, lambda s: [float(sum(s))])
        pulled = local_pullback({0: 1, 1: 2, 2: 0}, f, triangle, triangle)
        np.testing.assert_allclose(pulled((0, 1)), f((1, 2)))
        np.testing.assert_allclose(pulled((1, 2)), f((2, 0)))

    def test_local_pullback_rejects_collapse(self, triangle):
        f = VValuedForm.zeros(triangle, 0, 1)
        with pytest.raises(InputError):
            local_pullback({0: 0, 1: 0, 2: 1}, f, triangle, triangle)


class TestGroupForms:
    """G-valued forms and their ambiguous differential"""

    def test_reversed_orientation_inverts(self):
        G = circle()
        omega = GValuedForm(1, G, {(0, 1): G.element(0.4)})
        assert omega((1, 0)).close_to(G.element(-0.4))

    def test_gauge_form_has_identity_differential(self):
        """omega(xy) = g_y g_x^-1 is closed for every choice of g"""
        tetra = full_tetrahedron()
        G = special_orthogonal(3)
        rng = np.random.default_rng(5)
        gauge = {v: G.random_element(rng) for v in tetra.vertices}
        omega = GValuedForm.from_function(
            tetra, 1, G, lambda s: G.multiply(gauge[s[1]], G.inverse(gauge[s[0]]))
        )
        d_omega = differential_g(omega, tetra)
        assert all(d_omega(s).is_identity(1e-9) for s in tetra.simplices(2))
        assert is_closed_g(omega, tetra) is SearchVerdict.YES

    def test_random_form_is_not_closed(self, triangle):
        G = special_orthogonal(3)
        omega = GValuedForm.random(triangle, 1, G, np.random.default_rng(9))
        assert is_closed_g(omega, triangle) is SearchVerdict.NO

    def test_composite_edge_is_not_closed(self, triangle):
        """omega(02) = omega(01) omega(12) has curvature, only odd orderings cancel"""
        G = special_orthogonal(3)
        rng = np.random.default_rng(21)
        a, b = G.random_element(rng), G.random_element(rng)
        omega = GValuedForm(1, G, {(0, 1): a, (1, 2): b, (0, 2): G.multiply(a, b)})
        assert G.product([omega((0, 1)), omega((1, 2)), omega((2, 0))]).is_identity(1e-9)
        values = list(differential_g_realizations(omega, (0, 1, 2)))
        assert not any(v.is_identity(1e-6) for v in values)
        assert is_closed_g(omega, triangle) is SearchVerdict.NO

    def test_realizations_are_even_reorderings(self, triangle):
        G = special_orthogonal(3)
        omega = GValuedForm.random(triangle, 1, G, np.random.default_rng(22))
        rotations = list(differential_g_realizations(omega, (0, 1, 2), distinct=False))
        assert len(rotations) == 3
        traces = [G.trace(v) for v in rotations]
        np.testing.assert_allclose(traces, traces[0], atol=1e-12)

        tetra = full_tetrahedron()
        two_form = GValuedForm.random(tetra, 2, G, np.random.default_rng(23))
        values = list(differential_g_realizations(two_form, (0, 1, 2, 3), distinct=False))
        assert len(values) == 12

    def test_canonical_value_is_first_realization(self, triangle):
        G = special_orthogonal(3)
        omega = GValuedForm.random(triangle, 1, G, np.random.default_rng(11))
        first = next(differential_g_realizations(omega, (0, 1, 2)))
        assert first.close_to(canonical_differential_value(omega, (0, 1, 2)), 1e-12)

    def test_canonical_value_on_reversed_simplex(self, triangle):
        G = special_orthogonal(3)
        omega = GValuedForm.random(triangle, 1, G, np.random.default_rng(12))
        forward = canonical_differential_value(omega, (0, 1, 2))
        backward = canonical_differential_value(omega, (1, 0, 2))
        assert backward.close_to(forward.inv(), 1e-12)

    def test_abelian_differential_is_additive(self, triangle):
        G = circle()
        values = {(0, 1): 0.1, (1, 2): 0.2, (0, 2): 0.5}
        omega = GValuedForm(1, G, {s: G.element(a) for s, a in values.items()})
        value = differential_g(omega, triangle)((0, 1, 2))
        assert value.close_to(G.element(0.1 + 0.2 - 0.5), 1e-12)

    def test_degree_mismatch(self, triangle):
        omega = GValuedForm.identity(triangle, 1, circle())
        with pytest.raises(InputError):
            canonical_differential_value(omega, (0, 1))


class TestCupProducts:
    """Exact cup products and the Leibniz rule"""

    def test_exterior_wedge_signs(self):
        e0, e1 = ExteriorVector.basis(0), ExteriorVector.basis(1)
        assert e1.wedge(e0) == -e0.wedge(e1)
        assert e0.wedge(e0) == 0
        assert e0.wedge(e1).grades() == {2}

    def test_real_cup_value(self, triangle):
        omega = Cochain(1, {(0, 1): 2, (1, 2): 3, (0, 2): 0})
        assert cup_real(omega, omega, (0, 1, 2)) == Fraction(6)

    def test_real_leibniz(self):
        tetra = full_tetrahedron()
        rng = np.random.default_rng(3)
        omega = random_rational_cochain(tetra, 1, rng)
        theta = random_rational_cochain(tetra, 1, rng)
        assert leibniz_defect(omega, theta, tetra) == {}

    def test_mixed_degree_leibniz(self):
        tetra = full_tetrahedron()
        rng = np.random.default_rng(4)
        omega = random_rational_cochain(tetra, 0, rng)
        theta = random_rational_cochain(tetra, 2, rng)
        assert leibniz_defect(omega, theta, tetra) == {}

    def test_exterior_leibniz(self):
        tetra = full_tetrahedron()
        e = [ExteriorVector.basis(i) for i in range(3)]
        omega = exterior_cochain(
            tetra, 1, {(0, 1): e[0], (1, 2): e[1], (2, 3): e[2], (0, 3): e[0] + e[1]}
        )
        theta = exterior_cochain(tetra, 1, {(0, 2): e[2], (1, 3): e[0]})
        assert leibniz_defect(omega, theta, tetra) == {}

    def test_cup_degree(self, triangle):
        omega = Cochain.from_function(triangle, 1, lambda _: 1)
        assert cup_product(omega, omega, triangle).degree == 2

    def test_zm_leibniz(self):
        tetra = full_tetrahedron()
        G = cyclic(3)
        rng = np.random.default_rng(6)
        omega = GValuedForm.random(tetra, 1, G, rng)
        theta = GValuedForm.random(tetra, 1, G, rng)
        assert abelian_leibniz_residual(omega, theta, tetra) == 0.0

    def test_u1_pairs_with_integer_cochain(self):
        tetra = full_tetrahedron()
        G = circle()
        rng = np.random.default_rng(8)
        omega = GValuedForm.random(tetra, 1, G, rng)
        counts = Cochain.from_function(tetra, 1, lambda _: int(rng.integers(-2, 3)))
        assert abelian_leibniz_residual(omega, counts, tetra) < 1e-9

    def test_u1_needs_integers(self, triangle):
        G = circle()
        omega = GValuedForm.identity(triangle, 1, G)
        halves = Cochain.from_function(triangle, 1, lambda _: Fraction(1, 2))
        with pytest.raises(InputError):
            cup_abelian_g(omega, halves, triangle)

    def test_nonabelian_cup_unsupported(self, triangle):
        omega = GValuedForm.identity(triangle, 1, special_orthogonal(3))
        with pytest.raises(UnsupportedError):
            cup_abelian_g(omega, omega, triangle)


class TestCohomology:
    """Cohomology groups and class membership"""

    def test_circle_cohomology(self, hollow):
        assert cochain_cohomology(hollow, Z, 1).rank == 1
        assert cochain_cohomology(hollow, Z2, 1).torsion == (2,)

    def test_projective_plane(self, projective_plane):
        assert cochain_cohomology(projective_plane, Z, 1).is_trivial
        assert cochain_cohomology(projective_plane, Z, 2).torsion == (2,)
        assert cochain_cohomology(projective_plane, Z2, 1).torsion == (2,)
        assert cochain_cohomology(projective_plane, Z2, 2).torsion == (2,)

    def test_loop_cochain_is_nontrivial(self, hollow):
        values = {(0, 1): (1,)}
        assert classify_cochain(hollow, Z, 1, values) is ClassVerdict.NONTRIVIAL_CLASS

    def test_loop_cochain_is_not_closed_on_filled_triangle(self, triangle):
        values = {(0, 1): (1,)}
        assert classify_cochain(triangle, Z, 1, values) is ClassVerdict.NOT_CLOSED

    def test_coboundary_is_trivial(self, hollow):
        delta = coboundary_of_vertex_values(hollow, Z, {0: (0,), 1: (1,), 2: (0,)})
        assert delta == {(0, 1): (1,), (1, 2): (-1,)}
        assert classify_cochain(hollow, Z, 1, delta) is ClassVerdict.TRIVIAL_CLASS

    def test_mod_two_exactness(self, hollow):
        """Twice the loop generator is exact mod 2 but not over Z"""
        values = {(0, 1): (2,)}
        assert not is_coboundary(hollow, Z, 1, values)
        assert is_coboundary(hollow, Z2, 1, values)

    def test_foreign_simplex_rejected(self, hollow):
        with pytest.raises(InputError):
            is_coboundary(hollow, Z, 1, {(0, 5): (1,)})
