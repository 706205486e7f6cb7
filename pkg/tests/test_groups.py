"""
Tests for group backends, homotopy tables and correction maps
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugeflow.groups.group import (
    GroupKind,
    circle,
    create_group,
    cyclic,
    orthogonal,
    special_orthogonal,
    su2,
)
from gaugeflow.groups.homotopy import (
    HomotopyClass,
    beta_correction,
    homotopy_group,
    so3_loop_class,
    winding_number,
)
from gaugeflow.utils.errors import (
    AmbiguousGeodesicError,
    InputError,
    SingularInputError,
    UnsupportedError,
)

ALL_GROUPS = [
    {"kind": "cyclic", "n": 2},
    {"kind": "cyclic", "n": 5},
    {"kind": "u1"},
    {"kind": "so", "n": 3},
    {"kind": "o", "n": 3},
    {"kind": "su", "n": 2},
]


class TestGroupLaw:
    """Group axioms hold for every backend"""

    @pytest.mark.parametrize("spec", ALL_GROUPS)
    def test_identity_and_inverse(self, spec):
        G = create_group(spec)
        rng = np.random.default_rng(1)
        for _ in range(5):
            g = G.random_element(rng)
            assert G.close(G.multiply(g, G.identity()), g, 1e-9)
            assert G.is_identity(G.multiply(g, G.inverse(g)), 1e-9)

    @pytest.mark.parametrize("spec", ALL_GROUPS)
    def test_associativity(self, spec):
        G = create_group(spec)
        rng = np.random.default_rng(2)
        a, b, c = (G.random_element(rng) for _ in range(3))
        left = G.multiply(G.multiply(a, b), c)
        right = G.multiply(a, G.multiply(b, c))
        assert G.close(left, right, 1e-9)

    @pytest.mark.parametrize("spec", ALL_GROUPS)
    def test_representation_is_a_homomorphism(self, spec):
        G = create_group(spec)
        rng = np.random.default_rng(3)
        g, h = G.random_element(rng), G.random_element(rng)
        np.testing.assert_allclose(
            G.representation(G.multiply(g, h)),
            G.representation(g) @ G.representation(h),
            atol=1e-9,
        )

    def test_z2_acts_by_sign(self):
        G = cyclic(2)
        assert G.rep_dim == 1
        flip = G.from_sign(-1)
        np.testing.assert_allclose(G.act_on_vector(flip, [3.0]), [-3.0])
        assert G.sign(G.multiply(flip, flip)) == 1

    def test_rep_dims(self):
        assert circle().rep_dim == 2
        assert special_orthogonal(3).rep_dim == 3
        assert su2().rep_dim == 4

    def test_wrong_vector_dimension(self):
        G = special_orthogonal(3)
        with pytest.raises(InputError):
            G.act_on_vector(G.identity(), [1.0, 0.0])

    def test_elements_of_different_groups_do_not_mix(self):
        with pytest.raises(InputError):
            circle().multiply(circle().identity(), cyclic(3).identity())

    def test_non_orthogonal_matrix_rejected(self):
        with pytest.raises(InputError):
            special_orthogonal(2).element([[1.0, 1.0], [0.0, 1.0]])

    def test_reflection_not_in_special_group(self):
        with pytest.raises(InputError):
            special_orthogonal(2).element([[1.0, 0.0], [0.0, -1.0]])

    def test_unknown_kind(self):
        with pytest.raises(InputError):
            create_group({"kind": "e8"})

    def test_only_su2(self):
        with pytest.raises(UnsupportedError):
            create_group({"kind": "su", "n": 3})

    def test_json_form_round_trip(self):
        G = su2()
        g = G.random_element(4)
        assert G.close(G.from_json(G.to_json(g)), g, 1e-12)


class TestExpLog:
    """Exponential, logarithm and geodesics"""

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.floats(-1.5, 1.5), min_size=3, max_size=3))
    def test_so3_log_inverts_exp(self, coords):
        G = special_orthogonal(3)
        a = G.algebra_from_coords(coords)
        g = G.exp_map(a)
        np.testing.assert_allclose(G.log_map(g).coords(), coords, atol=1e-7)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(-3.0, 3.0))
    def test_circle_log_inverts_exp(self, angle):
        G = circle()
        g = G.exp_map(G.algebra_from_coords([angle]))
        assert abs(G.log_map(g).coords()[0] - angle) < 1e-9

    def test_su2_log_inverts_exp(self):
        G = su2()
        a = G.algebra_from_coords([0.3, -0.2, 0.5])
        np.testing.assert_allclose(
            G.log_map(G.exp_map(a)).coords(), [0.3, -0.2, 0.5], atol=1e-8
        )

    def test_so3_branch_cut(self):
        G = special_orthogonal(3)
        half_turn = G.element(np.diag([-1.0, -1.0, 1.0]))
        with pytest.raises(SingularInputError):
            G.log_map(half_turn)

    def test_geodesic_endpoints(self):
        G = special_orthogonal(3)
        g = G.exp_map(G.algebra_from_coords([0.1, 0.2, 0.3]))
        h = G.exp_map(G.algebra_from_coords([-0.4, 0.1, 0.2]))
        assert G.close(G.geodesic(g, h, 0.0), g, 1e-8)
        assert G.close(G.geodesic(g, h, 1.0), h, 1e-8)

    def test_geodesic_distance_is_symmetric(self):
        G = circle()
        g, h = G.element(0.3), G.element(-1.1)
        assert G.geodesic_distance(g, h) == pytest.approx(1.4)
        assert G.geodesic_distance(h, g) == pytest.approx(1.4)

    def test_cyclic_distance_uses_shorter_arc(self):
        G = cyclic(5)
        assert G.geodesic_distance(G.element(0), G.element(4)) == pytest.approx(
            2 * np.pi / 5
        )

    def test_discrete_group_has_no_exponential(self):
        G = cyclic(3)
        with pytest.raises(UnsupportedError):
            G.algebra_basis()

    def test_different_components_of_o3(self):
        G = orthogonal(3)
        reflection = G.element(np.diag([1.0, 1.0, -1.0]))
        with pytest.raises(SingularInputError):
            G.geodesic_distance(G.identity(), reflection)


class TestHomotopy:
    """Homotopy tables and the correction map"""

    def test_tables(self):
        assert homotopy_group(circle(), 1).factors == (0,)
        assert homotopy_group(special_orthogonal(3), 1).factors == (2,)
        assert homotopy_group(special_orthogonal(3), 2).is_trivial
        assert homotopy_group(special_orthogonal(3), 3).factors == (0,)
        assert homotopy_group(special_orthogonal(4), 3).factors == (0, 0)
        assert homotopy_group(su2(), 3).factors == (0,)
        assert homotopy_group(cyclic(4), 0).factors == (4,)
        assert homotopy_group(orthogonal(3), 0).factors == (2,)

    def test_degree_out_of_range(self):
        with pytest.raises(UnsupportedError):
            homotopy_group(circle(), 4)

    def test_class_arithmetic(self):
        G = special_orthogonal(3)
        c = HomotopyClass.of(G, 1, 1)
        assert (c + c).is_identity
        assert -c == c

    def test_beta_preserves_identity(self):
        for G, n in [(circle(), 1), (special_orthogonal(3), 1), (su2(), 3)]:
            assert beta_correction(G, n, HomotopyClass.identity(G, n)).is_identity()

    def test_beta_is_injective_on_small_classes(self):
        G = circle()
        images = [beta_correction(G, 1, HomotopyClass.of(G, 1, k)) for k in range(-3, 4)]
        keys = {G.element_key(g) for g in images}
        assert len(keys) == 7

    def test_beta_nontrivial_so3_class(self):
        G = special_orthogonal(3)
        image = beta_correction(G, 1, HomotopyClass.of(G, 1, 1))
        assert not image.is_identity()
        assert G.trace(image) == pytest.approx(-1.0)

    def test_kind_from_json(self):
        assert create_group({"kind": "u1"}).spec.kind is GroupKind.CIRCLE


class TestLoopClasses:
    def test_winding_once(self):
        angles = [2 * np.pi * k / 8 for k in range(8)]
        assert winding_number(angles) == 1
        assert winding_number(list(reversed(angles))) == -1

    def test_constant_loop(self):
        assert winding_number([0.2, 0.2, 0.2]) == 0

    def test_ambiguous_step(self):
        with pytest.raises(AmbiguousGeodesicError):
            winding_number([0.0, np.pi])

    def test_so3_full_turn_is_nontrivial(self):
        G = special_orthogonal(3)
        loop = [
            G.exp_map(G.algebra_from_coords([0.0, 0.0, 2 * np.pi * k / 8]))
            for k in range(8)
        ]
        assert so3_loop_class(loop) == 1

    def test_so3_double_turn_is_trivial(self):
        G = special_orthogonal(3)
        loop = [
            G.exp_map(G.algebra_from_coords([0.0, 0.0, 4 * np.pi * k / 16]))
            for k in range(16)
        ]
        assert so3_loop_class(loop) == 0
