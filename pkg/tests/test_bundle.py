"""
Tests for principal bundles, structural data assignment and associated fields
"""

import numpy as np
import pytest

from gaugeflow.bundle.assignment import (
    assign_cocycle_completion,
    assign_natural,
    assign_natural_u1,
    assign_random,
    supported_tables,
)
from gaugeflow.bundle.bundle import (
    PrincipalBundle,
    Section,
    StructuralData,
    characteristic_classes,
    is_strictly_trivial,
    list_assignable_slots,
    obstruction_form,
    transition_apply,
    trivial_bundle,
)
from gaugeflow.bundle.fields import (
    AssociatedField,
    equivariance_residual,
    equivariant_differential,
    gauge_transform_field,
)
from gaugeflow.forms.cohomology import ClassVerdict
from gaugeflow.forms.forms import GValuedForm, VValuedForm
from gaugeflow.groups.group import circle, cyclic, special_orthogonal
from gaugeflow.groups.homotopy import HomotopyClass
from gaugeflow.topology.complex import SimplicialComplex
from gaugeflow.utils.errors import InputError, UnsupportedError


def _fan() -> SimplicialComplex:
    """Three triangles sharing the edge 0-1"""
    return SimplicialComplex([(0, 1, 2), (0, 1, 3), (0, 1, 4)])


class TestStructuralData:
    """Slots, antisymmetry and serialization of obstruction classes"""

    def test_two_chart_u1_has_one_slot(self, two_chart):
        bundle = trivial_bundle(two_chart, circle())
        slots = list_assignable_slots(bundle)
        assert len(slots) == 1, "only the shared edge carries a pi_1 class"
        assert slots[0].face == (1, 2)
        assert slots[0].pair == (0, 1)

    def test_discrete_group_has_no_slots(self, two_chart):
        bundle = trivial_bundle(two_chart, cyclic(3))
        assert list_assignable_slots(bundle) == []

    def test_get_is_antisymmetric(self, two_chart):
        group = circle()
        cls = HomotopyClass.of(group, 1, 3)
        structure = StructuralData(group, {(0, 1, (1, 2)): cls})
        assert structure.get(0, 1, (2, 1)).coeffs == (3,)
        assert structure.get(1, 0, (1, 2)).coeffs == (-3,)

    def test_missing_entry_is_identity(self):
        group = circle()
        assert StructuralData(group).get(0, 1, (1, 2)).is_identity

    def test_rejects_unordered_pair(self):
        group = circle()
        with pytest.raises(InputError):
            StructuralData(group, {(1, 0, (1, 2)): HomotopyClass.of(group, 1, 1)})

    def test_identity_entries_are_dropped(self):
        group = circle()
        structure = StructuralData(group, {(0, 1, (1, 2)): HomotopyClass.of(group, 1, 0)})
        assert structure.is_empty

    def test_from_dict_negates_reversed_pair(self):
        group = circle()
        payload = {"slots": [{"pair": [1, 0], "face": [2, 1], "dim": 1, "class": [2]}]}
        structure = StructuralData.from_dict(payload, group)
        assert structure.get(0, 1, (1, 2)).coeffs == (-2,)

    def test_bundle_rejects_unshared_face(self, two_chart):
        group = circle()
        structure = StructuralData(group, {(0, 1, (0, 1)): HomotopyClass.of(group, 1, 1)})
        with pytest.raises(InputError):
            PrincipalBundle(two_chart, group, structure)


class TestVertexMaps:
    """Frames, vertex maps and the cocycle condition"""

    def test_cocycle_holds_for_random_frames(self, sphere):
        group = special_orthogonal(3)
        bundle = trivial_bundle(sphere, group)
        bundle = bundle.with_frames(Section.random(bundle, np.random.default_rng(4)))
        assert bundle.check_cocycle() < 1e-9

    def test_zeta_without_frames_is_identity(self, two_chart):
        bundle = trivial_bundle(two_chart, special_orthogonal(3))
        assert bundle.zeta(0, 1, 2).is_identity()

    def test_zeta_needs_shared_vertex(self, two_chart):
        bundle = trivial_bundle(two_chart, circle())
        with pytest.raises(InputError):
            bundle.zeta(0, 1, 0)

    def test_transition_round_trip(self, two_chart):
        group = special_orthogonal(3)
        rng = np.random.default_rng(11)
        bundle = trivial_bundle(two_chart, group)
        bundle = bundle.with_frames(Section.random(bundle, rng))
        value = group.random_element(rng)
        there = transition_apply(bundle, 0, 1, value, (1, 2))
        back = transition_apply(bundle, 1, 0, there, (1, 2))
        assert back.close_to(value), "the reverse transition undoes the forward one"

    def test_u1_class_rotates_vectors(self, two_chart):
        group = circle()
        structure = StructuralData(group, {(0, 1, (1, 2)): HomotopyClass.of(group, 1, 1)})
        bundle = PrincipalBundle(two_chart, group, structure)
        moved = transition_apply(bundle, 0, 1, np.array([1.0, 0.0]), (1, 2))
        np.testing.assert_allclose(moved, [np.cos(1.0), np.sin(1.0)], atol=1e-12)

    def test_vertex_values_are_not_corrected(self, two_chart):
        group = circle()
        structure = StructuralData(group, {(0, 1, (1, 2)): HomotopyClass.of(group, 1, 1)})
        bundle = PrincipalBundle(two_chart, group, structure)
        moved = transition_apply(bundle, 0, 1, np.array([1.0, 0.0]), (1,))
        np.testing.assert_allclose(moved, [1.0, 0.0])

    def test_unshared_face_rejected(self, two_chart):
        bundle = trivial_bundle(two_chart, circle())
        with pytest.raises(InputError):
            transition_apply(bundle, 0, 1, np.zeros(2), (0, 1))


class TestAssignment:
    """Random, cocycle-completing and natural strategies"""

    def test_random_full_density_fills_every_slot(self, two_chart):
        bundle = assign_random(trivial_bundle(two_chart, circle()), [1], 1.0, seed=3)
        assert len(bundle.structure.entries) == 1
        assert not is_strictly_trivial(bundle)
        assert 1 in characteristic_classes(bundle)

    def test_random_zero_density_is_trivial(self, two_chart):
        bundle = assign_random(trivial_bundle(two_chart, circle()), [1], 0.0, seed=3)
        assert is_strictly_trivial(bundle)

    def test_random_is_seed_deterministic(self, torus):
        base = trivial_bundle(torus, special_orthogonal(3))
        first = assign_random(base, [1], 0.5, seed=21)
        second = assign_random(base, [1], 0.5, seed=21)
        assert first.structure.to_dict() == second.structure.to_dict()

    def test_density_out_of_range(self, two_chart):
        with pytest.raises(InputError):
            assign_random(trivial_bundle(two_chart, circle()), [1], 1.5)

    def test_trivial_table_is_unsupported(self, two_chart):
        with pytest.raises(UnsupportedError):
            supported_tables(trivial_bundle(two_chart, special_orthogonal(3)), [2])

    def test_cocycle_completion_composes(self):
        group = special_orthogonal(3)
        bundle = assign_cocycle_completion(
            trivial_bundle(_fan(), group), [1], 0.7, seed=5
        )
        edge = (0, 1)
        s = bundle.structure
        assert (s.get(0, 1, edge) + s.get(1, 2, edge)) == s.get(0, 2, edge)

    def test_obstruction_sums_chart_pairs(self, two_chart):
        group = circle()
        structure = StructuralData(group, {(0, 1, (1, 2)): HomotopyClass.of(group, 1, 2)})
        chi = obstruction_form(PrincipalBundle(two_chart, group, structure), 1)
        assert chi[(1, 2)].coeffs == (2,)
        assert chi[(0, 1)].is_identity

    def test_natural_u1_reads_winding(self, two_chart):
        group = circle()
        bundle = trivial_bundle(two_chart, group)
        e = group.element
        section = Section(
            {
                0: {0: e(0.0), 1: e(0.0), 2: e(0.0)},
                1: {1: e(4.0), 2: e(2.0), 3: e(0.0)},
            }
        )
        assigned = assign_natural_u1(bundle, section)
        assert assigned.structure.get(0, 1, (1, 2)).coeffs == (1,)
        assert (0, 1, (1, 2)) in assigned.structure.corrections

    def test_natural_u1_half_turn_is_unresolved(self, two_chart):
        group = circle()
        bundle = trivial_bundle(two_chart, group)
        e = group.element
        section = Section(
            {
                0: {0: e(0.0), 1: e(0.0), 2: e(0.0)},
                1: {1: e(0.0), 2: e(np.pi), 3: e(0.0)},
            }
        )
        assigned = assign_natural(bundle, section)
        assert assigned.structure.is_empty
        assert len(assigned.structure.unresolved) == 1

    def test_natural_needs_supported_group(self, two_chart):
        bundle = trivial_bundle(two_chart, cyclic(2))
        with pytest.raises(UnsupportedError):
            assign_natural(bundle, Section.identity(bundle))

    def test_constant_section_is_trivial(self, torus):
        group = special_orthogonal(3)
        bundle = trivial_bundle(torus, group)
        assigned = assign_natural(bundle, Section.identity(bundle))
        assert assigned.structure.is_empty
        verdicts = characteristic_classes(assigned)
        assert verdicts[1] is ClassVerdict.TRIVIAL_CLASS


class TestAssociatedFields:
    """Local expressions, gauge transforms and equivariant differentials"""

    def test_from_global_agrees_on_overlaps(self, two_chart):
        group = special_orthogonal(3)
        rng = np.random.default_rng(8)
        bundle = trivial_bundle(two_chart, group)
        bundle = bundle.with_frames(Section.random(bundle, rng))
        form = GValuedForm.random(two_chart, 1, group, rng)
        field = AssociatedField.from_global(bundle, form)
        assert field.transition_residual() < 1e-9

    def test_vector_from_global_agrees_on_overlaps(self, two_chart):
        group = special_orthogonal(3)
        rng = np.random.default_rng(9)
        bundle = trivial_bundle(two_chart, group)
        bundle = bundle.with_frames(Section.random(bundle, rng))
        form = VValuedForm.from_function(two_chart, 0, 3, lambda _: rng.normal(size=3))
        field = AssociatedField.from_global(bundle, form)
        assert field.transition_residual() < 1e-9

    def test_missing_chart_rejected(self, two_chart):
        bundle = trivial_bundle(two_chart, circle())
        form = VValuedForm.zeros(SimplicialComplex([(0, 1, 2)]), 0, 2)
        with pytest.raises(InputError):
            AssociatedField(bundle, 0, {0: form})

    def test_gauge_transform_preserves_norms(self, two_chart):
        group = special_orthogonal(3)
        rng = np.random.default_rng(12)
        bundle = trivial_bundle(two_chart, group)
        field = AssociatedField.random_vector(bundle, 0, rng)
        moved = gauge_transform_field(field, Section.random(bundle, rng))
        for chart, form in field.local.items():
            for key in form.values:
                assert np.linalg.norm(moved.value(chart, key)) == pytest.approx(
                    np.linalg.norm(form(key))
                )

    def test_identity_translation_is_plain_differential(self, triangle):
        form = VValuedForm(0, 2, {(0,): [1.0, 0.0], (1,): [0.0, 2.0]})
        edge = (0, 1)
        np.testing.assert_allclose(
            equivariant_differential(form, edge), form((1,)) - form((0,))
        )

    @pytest.mark.parametrize("degree", [0, 1])
    def test_equivariance_residual_vanishes(self, triangle, degree):
        group = special_orthogonal(3)
        rng = np.random.default_rng(30 + degree)
        ordering = (0, 1) if degree == 0 else (0, 1, 2)
        vector = VValuedForm.from_function(triangle, degree, 3, lambda _: rng.normal(size=3))
        assert equivariance_residual(vector, ordering, group.random_element(rng)) < 1e-9
        grouped = GValuedForm.random(triangle, degree, group, rng)
        assert equivariance_residual(grouped, ordering, group.random_element(rng)) < 1e-9
