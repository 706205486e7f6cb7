"""
Fields of associated bundles in local form.

An associated field of degree k stores one local expression per chart: a vector or
group valued form on the k-faces of that chart. Gauge transforms and transitions
act on local expressions with the same rules:

- vector values are acted on at the first vertex of the (reference ordered) face;
- group values of degree 1 transform two-sidedly, ``F(Y) w F(X)^-1``;
- other group values are conjugated at the first vertex.

The equivariant differential corrects the plain differential for a fiber
translation of the first vertex.
"""

import itertools
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Union

import numpy as np

from ..forms.forms import GValuedForm, VValuedForm
from ..groups.group import GroupElement
from ..topology.complex import SimplicialComplex, boundary_faces
from ..utils.errors import InputError
from ..utils.logger import get_logger
from .bundle import PrincipalBundle, Section, transition_apply

logger = get_logger(__name__)

LocalForm = Union[VValuedForm, GValuedForm]
GaugeMap = Union[Section, GValuedForm]


def chart_complex(bundle: PrincipalBundle, chart: int) -> SimplicialComplex:
    """The closed simplex of one chart"""
    return SimplicialComplex([bundle.charts[chart].key])


@dataclass(frozen=True)
class AssociatedField:
    """Local expressions of a k-form field, one per chart"""

    bundle: PrincipalBundle
    degree: int
    local: Mapping[int, LocalForm]

    def __post_init__(self) -> None:
        kinds = {isinstance(form, VValuedForm) for form in self.local.values()}
        if len(kinds) > 1:
            raise InputError("local expressions mix vector and group values")
        for index, chart in enumerate(self.bundle.charts):
            form = self.local.get(index)
            if form is None:
                raise InputError(f"no local expression for chart {index} {chart}")
            if form.degree != self.degree:
                raise InputError(
                    f"chart {index} carries a {form.degree}-form, expected {self.degree}"
                )
            expected = set(chart_complex(self.bundle, index).simplices(self.degree))
            if set(form.values) != expected:
                raise InputError(f"local expression on chart {index} does not cover its faces")

    @property
    def is_vector(self) -> bool:
        return isinstance(next(iter(self.local.values())), VValuedForm)

    def value(self, chart: int, simplex: Sequence[int]) -> Any:
        return self.local[chart](simplex)

    @classmethod
    def from_global(cls, bundle: PrincipalBundle, form: LocalForm) -> "AssociatedField":
        """
        Express one form on the base in every chart frame.

        Chart k sees ``transform_local_value`` with its frame ``h_k``, which matches the
        vertex maps on every shared face of an obstruction-free bundle.
        """
        local: Dict[int, LocalForm] = {}
        for index, chart in enumerate(bundle.charts):
            frame_at = {v: bundle.frame(index, v) for v in chart.key}
            values = {
                k: transform_local_value(form(k), k, frame_at)
                for k in chart_complex(bundle, index).simplices(form.degree)
            }
            if isinstance(form, VValuedForm):
                local[index] = VValuedForm(form.degree, form.dim, values)
            else:
                local[index] = GValuedForm(form.degree, form.group, values)
        return cls(bundle, form.degree, local)

    @classmethod
    def random_vector(
        cls, bundle: PrincipalBundle, degree: int, rng: np.random.Generator
    ) -> "AssociatedField":
        dim = bundle.group.rep_dim
        local: Dict[int, LocalForm] = {
            index: VValuedForm.from_function(
                chart_complex(bundle, index), degree, dim, lambda _: rng.normal(size=dim)
            )
            for index in range(len(bundle.charts))
        }
        return cls(bundle, degree, local)

    @classmethod
    def random_group(
        cls, bundle: PrincipalBundle, degree: int, rng: np.random.Generator
    ) -> "AssociatedField":
        local: Dict[int, LocalForm] = {
            index: GValuedForm.random(chart_complex(bundle, index), degree, bundle.group, rng)
            for index in range(len(bundle.charts))
        }
        return cls(bundle, degree, local)

    def transition_residual(self) -> float:
        """Largest mismatch between neighbouring local expressions on shared faces"""
        group = self.bundle.group
        worst = 0.0
        for i, j in self.bundle.chart_pairs():
            shared = sorted(set(self.bundle.charts[i].key) & set(self.bundle.charts[j].key))
            for face in itertools.combinations(shared, self.degree + 1):
                moved = transition_apply(self.bundle, i, j, self.value(i, face), face)
                target = self.value(j, face)
                if self.is_vector:
                    worst = max(worst, float(np.max(np.abs(moved - target))))
                else:
                    worst = max(worst, group.distance_residual(moved, target))
        return worst

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "charts": [
                {"chart": list(self.bundle.charts[i].key), "form": self.local[i].to_dict()}
                for i in sorted(self.local)
            ],
        }


def _gauge_value(gauge: GaugeMap, chart: int, vertex: int) -> GroupElement:
    if isinstance(gauge, Section):
        return gauge(chart, vertex)
    if gauge.degree != 0:
        raise InputError("a gauge transform is a group-valued 0-form")
    return gauge((vertex,))


def transform_local_value(
    value: Any,
    face: Sequence[int],
    gauge_at: Mapping[int, GroupElement],
) -> Any:
    """Act with per-vertex group elements on one local value living on ``face``"""
    first = gauge_at[face[0]]
    group = first.group
    if isinstance(value, np.ndarray):
        return group.act_on_vector(first, value)
    if len(face) == 2:
        return group.product([gauge_at[face[1]], value, first.inv()])
    return group.conjugate(first, value)


def gauge_transform_field(field: AssociatedField, gauge: GaugeMap) -> AssociatedField:
    """Apply a gauge transform chart by chart"""
    local: Dict[int, LocalForm] = {}
    for index, form in field.local.items():
        chart = field.bundle.charts[index]
        gauge_at = {v: _gauge_value(gauge, index, v) for v in chart.key}
        values = {
            key: transform_local_value(form(key), key, gauge_at) for key in form.values
        }
        if isinstance(form, VValuedForm):
            local[index] = VValuedForm(form.degree, form.dim, values)
        else:
            local[index] = GValuedForm(form.degree, form.group, values)
    logger.debug(f"[BUNDLE] Gauge transformed a degree-{field.degree} field")
    return AssociatedField(field.bundle, field.degree, local)


def _check_ordering(form: LocalForm, ordering: Sequence[int]) -> None:
    if len(ordering) != form.degree + 2:
        raise InputError(
            f"the differential of a {form.degree}-form lives on {form.degree + 1}-simplices"
        )


def equivariant_differential(
    form: LocalForm, ordering: Sequence[int], g: Optional[GroupElement] = None
) -> Any:
    """
    ``d*`` on the simplex ``(A_0 .. A_{k+1})`` whose first vertex is translated by g.

    Vector forms give ``dv - v(L_0) + g v(L_0)``; group forms give
    ``w(L_{k+1}) .. w(L_1) g w(L_0) g^-1``, where L_0 is the face opposite A_0.
    """
    _check_ordering(form, ordering)
    faces = boundary_faces(ordering)
    if isinstance(form, VValuedForm):
        total = sum((form(face) for face in faces), np.zeros(form.dim))
        if g is None:
            return total
        opposite = form(faces[0])
        return total - opposite + g.group.act_on_vector(g, opposite)
    group = form.group
    tail = form(faces[0])
    if g is not None:
        tail = group.conjugate(g, tail)
    return group.product([form(face) for face in reversed(faces[1:])] + [tail])


def translated_differential(
    form: LocalForm, ordering: Sequence[int], g: GroupElement
) -> Any:
    """
    Plain differential of the equivariant extension of ``form`` on ``(gA_0) A_1 ..``.

    Faces through the translated vertex pick up the fiber action; the opposite face
    does not.
    """
    _check_ordering(form, ordering)
    faces = boundary_faces(ordering)
    group = g.group
    translated = []
    for index, face in enumerate(faces):
        value = form(face)
        if index > 0:
            if isinstance(form, VValuedForm):
                value = group.act_on_vector(g, value)
            else:
                value = group.conjugate(g, value)
        translated.append(value)
    if isinstance(form, VValuedForm):
        return sum(translated, np.zeros(form.dim))
    return group.product(list(reversed(translated)))


def equivariance_residual(
    form: LocalForm, ordering: Sequence[int], g: GroupElement
) -> float:
    """
    Distance between the translated differential and ``g . d*_{g^-1}``.

    The two agree exactly for equivariant forms.
    """
    direct = translated_differential(form, ordering, g)
    corrected = equivariant_differential(form, ordering, g.inv())
    group = g.group
    if isinstance(form, VValuedForm):
        return float(np.max(np.abs(direct - group.act_on_vector(g, corrected))))
    return group.distance_residual(direct, group.conjugate(g, corrected))

