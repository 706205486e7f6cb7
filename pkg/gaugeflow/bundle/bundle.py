"""
Semidiscrete principal bundles.

The charts of a bundle are the faced simplices of its base, indexed in sorted order.
Between two charts that share a face the bundle carries:

- a vertex map zeta_ij on the shared vertices, derived from per-chart frames h_i as
  ``zeta_ij(X) = h_j(X) h_i(X)^-1``. It carries chart i coordinates to chart j, so
  the cocycle rule holds by construction in composition order,
  ``zeta_jk zeta_ij = zeta_ik``;
- structural data: for each shared face of dimension n >= 1, a class in pi_n(G),
  stored for i < j and read as its negative for i > j.

Transition maps act on local expressions of fields. In the canonical direction
(i < j) the correction beta_n(class) is applied outermost; the other direction is
the exact inverse map.
"""

import itertools
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..forms.cohomology import ClassVerdict, classify_cochain
from ..groups.group import GaugeGroup, GroupElement
from ..groups.homotopy import HomotopyClass, beta_correction, homotopy_group
from ..topology.complex import (
    OrientedSimplex,
    Simplex,
    SimplicialComplex,
    common_faces,
    faced_simplices,
)
from ..utils.errors import InputError, UnsupportedError
from ..utils.logger import get_logger

logger = get_logger(__name__)

# (chart i, chart j, shared face) with i < j
SlotKey = Tuple[int, int, Simplex]


@dataclass(frozen=True, order=True)
class Slot:
    """A shared face of a chart pair that can carry an obstruction class"""

    pair: Tuple[int, int]
    face: Simplex
    dim: int

    @property
    def key(self) -> SlotKey:
        return (self.pair[0], self.pair[1], self.face)


@dataclass(frozen=True)
class StructuralData:
    """Obstruction classes per slot, antisymmetric under swapping the pair"""

    group: GaugeGroup
    entries: Mapping[SlotKey, HomotopyClass] = field(default_factory=dict)
    corrections: Mapping[SlotKey, GroupElement] = field(default_factory=dict)
    unresolved: Tuple[Tuple[SlotKey, str], ...] = ()

    def __post_init__(self) -> None:
        for (i, j, face), cls in self.entries.items():
            if i >= j:
                raise InputError(f"structural data is stored for i < j, got ({i}, {j})")
            if cls.n != len(face) - 1:
                raise InputError(
                    f"class of degree {cls.n} assigned to a {len(face) - 1}-face {face}"
                )
        object.__setattr__(
            self,
            "entries",
            {k: v for k, v in sorted(self.entries.items()) if not v.is_identity},
        )

    def get(self, i: int, j: int, face: Sequence[int]) -> HomotopyClass:
        key_face = tuple(sorted(face))
        n = len(key_face) - 1
        if i < j:
            cls = self.entries.get((i, j, key_face))
            return cls if cls is not None else HomotopyClass.identity(self.group, n)
        cls = self.entries.get((j, i, key_face))
        return -cls if cls is not None else HomotopyClass.identity(self.group, n)

    def with_entry(self, slot: Slot, cls: HomotopyClass) -> "StructuralData":
        entries = dict(self.entries)
        entries[slot.key] = cls
        return replace(self, entries=entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def to_dict(self) -> Dict[str, Any]:
        slots = []
        for (i, j, face), cls in self.entries.items():
            slot: Dict[str, Any] = {
                "pair": [i, j],
                "face": list(face),
                "dim": cls.n,
                "class": list(cls.coeffs),
            }
            correction = self.corrections.get((i, j, face))
            if correction is not None:
                slot["correction"] = self.group.to_json(correction)
            slots.append(slot)
        return {"slots": slots}

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any], group: GaugeGroup) -> "StructuralData":
        entries: Dict[SlotKey, HomotopyClass] = {}
        corrections: Dict[SlotKey, GroupElement] = {}
        for slot in payload.get("slots", []):
            i, j = (int(x) for x in slot["pair"])
            face = tuple(sorted(int(v) for v in slot["face"]))
            homotopy = HomotopyClass(group, int(slot["dim"]), tuple(slot["class"]))
            if i > j:
                i, j, homotopy = j, i, -homotopy
            entries[(i, j, face)] = homotopy
            if "correction" in slot:
                corrections[(i, j, face)] = group.from_json(slot["correction"])
        return cls(group, entries, corrections)


@dataclass(frozen=True)
class Section:
    """Fiber coordinate of the section per chart and vertex"""

    values: Mapping[int, Mapping[int, GroupElement]]

    def __call__(self, chart: int, vertex: int) -> GroupElement:
        try:
            return self.values[chart][vertex]
        except KeyError as e:
            raise InputError(f"section is undefined at vertex {vertex} of chart {chart}") from e

    @classmethod
    def constant(cls, bundle: "PrincipalBundle", value: GroupElement) -> "Section":
        return cls(
            {
                i: {v: value for v in chart.key}
                for i, chart in enumerate(bundle.charts)
            }
        )

    @classmethod
    def identity(cls, bundle: "PrincipalBundle") -> "Section":
        return cls.constant(bundle, bundle.group.identity())

    @classmethod
    def random(cls, bundle: "PrincipalBundle", rng: np.random.Generator) -> "Section":
        return cls(
            {
                i: {v: bundle.group.random_element(rng) for v in chart.key}
                for i, chart in enumerate(bundle.charts)
            }
        )

    @classmethod
    def from_vertex_values(
        cls, bundle: "PrincipalBundle", values: Mapping[int, GroupElement]
    ) -> "Section":
        """Same coordinate at a vertex in every chart containing it"""
        return cls(
            {i: {v: values[v] for v in chart.key} for i, chart in enumerate(bundle.charts)}
        )


@dataclass(frozen=True)
class PrincipalBundle:
    """Base complex, structure group, structural data and chart frames"""

    base: SimplicialComplex
    group: GaugeGroup
    structure: StructuralData
    frames: Optional[Section] = None

    def __post_init__(self) -> None:
        if self.structure.group != self.group:
            raise InputError("structural data belongs to a different group")
        charts = faced_simplices(self.base)
        object.__setattr__(self, "_charts", charts)
        for i, j, face in self.structure.entries:
            if i >= len(charts) or j >= len(charts):
                raise InputError(f"structural data references unknown chart pair ({i}, {j})")
            if not set(face) <= set(charts[i].key) & set(charts[j].key):
                raise InputError(f"face {face} is not shared by charts {i} and {j}")

    @property
    def charts(self) -> List[OrientedSimplex]:
        return getattr(self, "_charts")

    def chart_index(self, simplex: Sequence[int]) -> int:
        key = tuple(sorted(simplex))
        for index, chart in enumerate(self.charts):
            if chart.key == key:
                return index
        raise InputError(f"{key} is not a faced simplex")

    def charts_containing(self, simplex: Sequence[int]) -> List[int]:
        vertices = set(simplex)
        return [i for i, chart in enumerate(self.charts) if vertices <= set(chart.key)]

    def chart_pairs(self) -> List[Tuple[int, int]]:
        pairs = []
        for i, j in itertools.combinations(range(len(self.charts)), 2):
            if set(self.charts[i].key) & set(self.charts[j].key):
                pairs.append((i, j))
        return pairs

    def frame(self, chart: int, vertex: int) -> GroupElement:
        if self.frames is None:
            return self.group.identity()
        return self.frames(chart, vertex)

    def zeta(self, i: int, j: int, vertex: int) -> GroupElement:
        """Vertex map ``zeta_ij(X) = h_j(X) h_i(X)^-1`` from chart i to chart j"""
        for chart in (i, j):
            if vertex not in self.charts[chart].key:
                raise InputError(f"vertex {vertex} is not in chart {chart}")
        return self.group.multiply(self.frame(j, vertex), self.frame(i, vertex).inv())

    def check_cocycle(self) -> float:
        """Largest residual of zeta_jk zeta_ij = zeta_ik over shared vertices"""
        worst = 0.0
        for vertex in self.base.vertices:
            charts = self.charts_containing((vertex,))
            for i, j, k in itertools.permutations(charts, 3):
                lhs = self.group.multiply(self.zeta(j, k, vertex), self.zeta(i, j, vertex))
                worst = max(worst, self.group.distance_residual(lhs, self.zeta(i, k, vertex)))
        return worst

    def with_structure(self, structure: StructuralData) -> "PrincipalBundle":
        return PrincipalBundle(self.base, self.group, structure, self.frames)

    def with_frames(self, frames: Optional[Section]) -> "PrincipalBundle":
        return PrincipalBundle(self.base, self.group, self.structure, frames)

    def beta(self, i: int, j: int, face: Sequence[int]) -> GroupElement:
        """Correction element for the class on ``face`` between charts i and j"""
        cls = self.structure.get(i, j, face)
        if cls.table.is_trivial:
            return self.group.identity()
        return beta_correction(self.group, cls.n, cls)


def trivial_bundle(complex_: SimplicialComplex, group: GaugeGroup) -> PrincipalBundle:
    """Bundle with no obstructions and identity transition vertex maps"""
    return PrincipalBundle(complex_, group, StructuralData(group))


def list_assignable_slots(bundle: PrincipalBundle) -> List[Slot]:
    """Shared faces of chart pairs whose dimension has a nontrivial pi_n(G)"""
    supported = {}
    for n in range(1, 4):
        try:
            supported[n] = not homotopy_group(bundle.group, n).is_trivial
        except UnsupportedError:
            supported[n] = False
    slots = []
    for i, j in bundle.chart_pairs():
        for face, dim in common_faces(bundle.charts[i], bundle.charts[j], bundle.base):
            if dim >= 1 and supported.get(dim, False):
                slots.append(Slot((i, j), face.key, dim))
    return sorted(slots, key=lambda s: (s.dim, s.pair, s.face))


def is_strictly_trivial(bundle: PrincipalBundle) -> bool:
    return bundle.structure.is_empty


def obstruction_form(bundle: PrincipalBundle, n: int) -> Dict[Simplex, HomotopyClass]:
    """Sum of the classes of every chart pair sharing each n-simplex"""
    table = homotopy_group(bundle.group, n)
    form: Dict[Simplex, HomotopyClass] = {}
    for simplex in bundle.base.simplices(n):
        total = HomotopyClass.identity(bundle.group, n)
        for i, j in itertools.combinations(bundle.charts_containing(simplex), 2):
            total = total + bundle.structure.get(i, j, simplex)
        form[simplex] = total
    logger.debug(f"[BUNDLE] Obstruction form chi_{n} with coefficients {table}")
    return form


def characteristic_classes(bundle: PrincipalBundle) -> Dict[int, ClassVerdict]:
    """Cohomological verdict on chi_n for each n with nontrivial pi_n(G)"""
    verdicts: Dict[int, ClassVerdict] = {}
    for n in range(1, min(3, bundle.base.dimension) + 1):
        try:
            table = homotopy_group(bundle.group, n)
        except UnsupportedError:
            continue
        if table.is_trivial:
            continue
        chi = obstruction_form(bundle, n)
        values = {s: c.coeffs for s, c in chi.items() if not c.is_identity}
        verdicts[n] = classify_cochain(bundle.base, table, n, values)
        logger.info(f"[BUNDLE] Characteristic class in degree {n}: {verdicts[n].value}")
    return verdicts


FieldValue = Union[GroupElement, np.ndarray]


def transition_apply(
    bundle: PrincipalBundle,
    i: int,
    j: int,
    value: FieldValue,
    face: Sequence[int],
    degree: Optional[int] = None,
) -> FieldValue:
    """
    Express a local field value of chart i in chart j.

    ``face`` is the ordered simplex the value lives on; its first vertex is the base
    point for vertex maps on faces of dimension >= 2 and for vector k-forms. Group
    values of degree 1 follow ``beta zeta(Y) phi zeta(X)^-1 beta^-1``, other group
    values are conjugated at the base point, vectors are acted on.
    """
    ordering = tuple(face)
    degree = len(ordering) - 1 if degree is None else degree
    if degree != len(ordering) - 1:
        raise InputError("degree does not match the face the value lives on")
    shared = set(bundle.charts[i].key) & set(bundle.charts[j].key)
    if not set(ordering) <= shared:
        raise InputError(f"face {ordering} is not shared by charts {i} and {j}")
    if i == j:
        return value
    if i > j:
        return _inverse_transition(bundle, j, i, value, ordering, degree)
    return _forward_transition(bundle, i, j, value, ordering, degree)


def _forward_transition(
    bundle: PrincipalBundle,
    i: int,
    j: int,
    value: FieldValue,
    ordering: Tuple[int, ...],
    degree: int,
) -> FieldValue:
    group = bundle.group
    base = ordering[0]
    zeta_x = bundle.zeta(i, j, base)
    if isinstance(value, np.ndarray):
        moved = group.act_on_vector(zeta_x, value)
        if degree >= 1:
            moved = group.act_on_vector(bundle.beta(i, j, ordering), moved)
        return moved
    if degree == 1:
        zeta_y = bundle.zeta(i, j, ordering[1])
        inner = group.product([zeta_y, value, zeta_x.inv()])
    else:
        inner = group.conjugate(zeta_x, value)
    if degree >= 1:
        return group.conjugate(bundle.beta(i, j, ordering), inner)
    return inner


def _inverse_transition(
    bundle: PrincipalBundle,
    i: int,
    j: int,
    value: FieldValue,
    ordering: Tuple[int, ...],
    degree: int,
) -> FieldValue:
    """Inverse of the forward map from chart i to chart j"""
    group = bundle.group
    base = ordering[0]
    zeta_x = bundle.zeta(i, j, base)
    if isinstance(value, np.ndarray):
        moved = value
        if degree >= 1:
            moved = group.act_on_vector(bundle.beta(i, j, ordering).inv(), moved)
        return group.act_on_vector(zeta_x.inv(), moved)
    inner = value
    if degree >= 1:
        inner = group.conjugate(bundle.beta(i, j, ordering).inv(), inner)
    if degree == 1:
        zeta_y = bundle.zeta(i, j, ordering[1])
        return group.product([zeta_y.inv(), inner, zeta_x])
    return group.conjugate(zeta_x.inv(), inner)
