"""
V-valued and G-valued discrete differential forms.

Values are stored on reference-oriented simplices (ascending vertex ids). Evaluating
on the opposite orientation negates a V-valued form and inverts a G-valued one.

G-valued differentials are ambiguous: on a (k+1)-simplex every ordering of the
induced faces gives a product. The point-based value at a vertex A uses an ordering
of the simplex that starts at A, with faces L_i = (-1)^i (A_0 .. ^A_i .. A_{k+1})
multiplied as ``w(L_{k+1}) ... w(L_1) w(L_0)``. The canonical value is the point-based
value at the smallest vertex.
"""

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Union

import numpy as np

from ..config.settings import get_settings
from ..groups.group import GaugeGroup, GroupElement
from ..topology.complex import (
    OrientedSimplex,
    Simplex,
    SimplicialComplex,
    boundary_faces,
    permutation_sign,
)
from ..topology.paths import SearchVerdict
from ..utils.errors import InputError
from ..utils.logger import get_logger

logger = get_logger(__name__)

SimplexLike = Union[OrientedSimplex, Sequence[int]]


def as_oriented(simplex: SimplexLike) -> OrientedSimplex:
    if isinstance(simplex, OrientedSimplex):
        return simplex
    return OrientedSimplex.from_vertices(simplex)


@dataclass
class VValuedForm:
    """Real-vector valued k-form"""

    degree: int
    dim: int
    values: Dict[Simplex, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized: Dict[Simplex, np.ndarray] = {}
        for key, value in self.values.items():
            vector = np.asarray(value, dtype=float).reshape(self.dim)
            oriented = as_oriented(key)
            if oriented.dim != self.degree:
                raise InputError(f"{key} is not a {self.degree}-simplex")
            normalized[oriented.key] = vector * oriented.orientation
        self.values = normalized

    @classmethod
    def from_function(
        cls,
        complex_: SimplicialComplex,
        degree: int,
        dim: int,
        fn: Callable[[Simplex], Sequence[float]],
    ) -> "VValuedForm":
        return cls(degree, dim, {s: np.asarray(fn(s)) for s in complex_.simplices(degree)})

    @classmethod
    def zeros(cls, complex_: SimplicialComplex, degree: int, dim: int) -> "VValuedForm":
        return cls.from_function(complex_, degree, dim, lambda _: np.zeros(dim))

    def __call__(self, simplex: SimplexLike) -> np.ndarray:
        oriented = as_oriented(simplex)
        if oriented.key not in self.values:
            raise InputError(f"form has no value on {oriented}")
        return self.values[oriented.key] * oriented.orientation

    def support(self) -> List[Simplex]:
        return sorted(self.values)

    def max_abs(self) -> float:
        if not self.values:
            return 0.0
        return float(max(np.max(np.abs(v)) for v in self.values.values()))

    def __sub__(self, other: "VValuedForm") -> "VValuedForm":
        return VValuedForm(
            self.degree,
            self.dim,
            {k: self.values[k] - other(k) for k in self.values},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "values": [
                {"simplex": list(k), "value": self.values[k].tolist()}
                for k in self.support()
            ],
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "VValuedForm":
        entries = payload.get("values", [])
        dim = len(entries[0]["value"]) if entries else int(payload.get("dim", 1))
        return cls(
            int(payload["degree"]),
            dim,
            {tuple(e["simplex"]): np.asarray(e["value"]) for e in entries},
        )


@dataclass
class GValuedForm:
    """Group-valued k-form"""

    degree: int
    group: GaugeGroup
    values: Dict[Simplex, GroupElement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized: Dict[Simplex, GroupElement] = {}
        for key, value in self.values.items():
            oriented = as_oriented(key)
            if oriented.dim != self.degree:
                raise InputError(f"{key} is not a {self.degree}-simplex")
            if value.group != self.group:
                raise InputError(f"value on {key} is not in {self.group.name}")
            normalized[oriented.key] = value if oriented.orientation == 1 else value.inv()
        self.values = normalized

    @classmethod
    def from_function(
        cls,
        complex_: SimplicialComplex,
        degree: int,
        group: GaugeGroup,
        fn: Callable[[Simplex], GroupElement],
    ) -> "GValuedForm":
        return cls(degree, group, {s: fn(s) for s in complex_.simplices(degree)})

    @classmethod
    def identity(
        cls, complex_: SimplicialComplex, degree: int, group: GaugeGroup
    ) -> "GValuedForm":
        return cls.from_function(complex_, degree, group, lambda _: group.identity())

    @classmethod
    def random(
        cls,
        complex_: SimplicialComplex,
        degree: int,
        group: GaugeGroup,
        rng: np.random.Generator,
    ) -> "GValuedForm":
        return cls.from_function(
            complex_, degree, group, lambda _: group.random_element(rng)
        )

    def __call__(self, simplex: SimplexLike) -> GroupElement:
        oriented = as_oriented(simplex)
        if oriented.key not in self.values:
            raise InputError(f"form has no value on {oriented}")
        value = self.values[oriented.key]
        return value if oriented.orientation == 1 else value.inv()

    def support(self) -> List[Simplex]:
        return sorted(self.values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "values": [
                {"simplex": list(k), "value": self.group.to_json(self.values[k])}
                for k in self.support()
            ],
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any], group: GaugeGroup) -> "GValuedForm":
        return cls(
            int(payload["degree"]),
            group,
            {
                tuple(e["simplex"]): group.from_json(e["value"])
                for e in payload.get("values", [])
            },
        )


# V-valued differentials


def differential_v(f: VValuedForm, complex_: SimplicialComplex) -> VValuedForm:
    """Alternating sum of face values; zero where no (k+1)-simplex exists"""
    values = {}
    for simplex in complex_.simplices(f.degree + 1):
        total = np.zeros(f.dim)
        for face in boundary_faces(simplex):
            total = total + f(face)
        values[simplex] = total
    return VValuedForm(f.degree + 1, f.dim, values)


@dataclass
class ModuleActionCheck:
    """``d(fv)`` next to its symmetric split ``df * avg(v) + avg(f) * dv``"""

    lhs: VValuedForm
    df_v: VValuedForm
    f_dv: VValuedForm

    @property
    def residual(self) -> float:
        worst = 0.0
        for key in self.lhs.values:
            split = self.df_v.values[key] + self.f_dv.values[key]
            worst = max(worst, float(np.max(np.abs(self.lhs.values[key] - split))))
        return worst


def module_action(
    f: Mapping[int, float], v: VValuedForm, complex_: SimplicialComplex
) -> ModuleActionCheck:
    """Product rule for a scalar function acting on a vector 0-form"""
    if v.degree != 0:
        raise InputError("the module action is defined on 0-forms")
    missing = [x for x in complex_.vertices if x not in f]
    if missing:
        raise InputError(f"scalar function is undefined on vertices {missing}")
    fv = VValuedForm(0, v.dim, {(x,): f[x] * v((x,)) for x in complex_.vertices})
    lhs = differential_v(fv, complex_)
    dv = differential_v(v, complex_)
    df_v, f_dv = {}, {}
    for x, y in complex_.simplices(1):
        df_v[(x, y)] = (f[y] - f[x]) * 0.5 * (v((x,)) + v((y,)))
        f_dv[(x, y)] = 0.5 * (f[x] + f[y]) * dv((x, y))
    return ModuleActionCheck(
        lhs, VValuedForm(1, v.dim, df_v), VValuedForm(1, v.dim, f_dv)
    )


def g_action_on_vform(omega: GValuedForm, v: VValuedForm) -> VValuedForm:
    """Simplex-wise ``rho(omega) v`` on reference orientations"""
    if omega.degree != v.degree:
        raise InputError("group form and vector form must have the same degree")
    if omega.group.rep_dim != v.dim:
        raise InputError(
            f"{omega.group.name} acts on dimension {omega.group.rep_dim}, "
            f"vector form has dimension {v.dim}"
        )
    values = {
        key: omega.group.act_on_vector(omega.values[key], v.values[key])
        for key in v.values
        if key in omega.values
    }
    return VValuedForm(v.degree, v.dim, values)


# G-valued differentials


def point_based_product(omega: GValuedForm, ordering: Sequence[int]) -> GroupElement:
    faces = boundary_faces(ordering)
    return omega.group.product([omega(face) for face in reversed(faces)])


def differential_g_point_based(
    omega: GValuedForm, sigma: SimplexLike, base: int
) -> GroupElement:
    """Point-based value of ``d omega`` on ``sigma`` at vertex ``base``"""
    simplex = as_oriented(sigma)
    if simplex.dim != omega.degree + 1:
        raise InputError(
            f"d of a {omega.degree}-form is evaluated on {omega.degree + 1}-simplices"
        )
    return point_based_product(omega, simplex.ordered_from(base))


def canonical_differential_value(omega: GValuedForm, sigma: SimplexLike) -> GroupElement:
    simplex = as_oriented(sigma)
    if simplex.orientation == -1:
        return canonical_differential_value(omega, simplex.reversed()).inv()
    return differential_g_point_based(omega, simplex, simplex.key[0])


def differential_g(omega: GValuedForm, complex_: SimplicialComplex) -> GValuedForm:
    """Canonical differential of a whole form"""
    return GValuedForm(
        omega.degree + 1,
        omega.group,
        {
            s: canonical_differential_value(omega, OrientedSimplex(s))
            for s in complex_.simplices(omega.degree + 1)
        },
    )


def differential_g_realizations(
    omega: GValuedForm, sigma: SimplexLike, distinct: bool = True
) -> Iterator[GroupElement]:
    """
    Values of ``d omega`` on ``sigma`` over even reorderings of its faces.

    An even permutation of the vertices permutes the induced faces the same way, so
    the point-based values over even vertex orderings (identity first) are exactly
    the (k+2)!/2 realizations. On a triangle these are the three cyclic rotations.
    """
    simplex = as_oriented(sigma)
    if simplex.dim != omega.degree + 1:
        raise InputError(
            f"d of a {omega.degree}-form is evaluated on {omega.degree + 1}-simplices"
        )
    group = omega.group
    seen = set()
    base = simplex.vertices
    for perm in itertools.permutations(range(len(base))):
        if permutation_sign(perm) != 1:
            continue
        value = point_based_product(omega, [base[i] for i in perm])
        if distinct:
            key = group.element_key(value)
            if key in seen:
                continue
            seen.add(key)
        yield value


def is_closed_g(
    omega: GValuedForm, complex_: SimplicialComplex, budget: Optional[int] = None
) -> SearchVerdict:
    """Search for an identity realization of ``d omega`` on every (k+1)-simplex"""
    budget = budget if budget is not None else get_settings().search_budget
    explored = 0
    for simplex in complex_.simplices(omega.degree + 1):
        found = False
        for value in differential_g_realizations(omega, OrientedSimplex(simplex)):
            explored += 1
            if value.is_identity():
                found = True
                break
            if explored >= budget:
                logger.info(f"[GROUP] Closure search ran out of budget at {simplex}")
                return SearchVerdict.UNKNOWN
        if not found:
            return SearchVerdict.NO
    return SearchVerdict.YES


def local_pullback(
    vertex_map: Mapping[int, int],
    form: Union[VValuedForm, GValuedForm],
    source: SimplicialComplex,
    target: SimplicialComplex,
) -> Union[VValuedForm, GValuedForm]:
    """Pull a form back along a local simplicial isomorphism ``source -> target``"""
    for simplex in source.faced():
        image = [vertex_map.get(v) for v in simplex]
        if any(v is None for v in image):
            raise InputError(f"vertex map is undefined on part of {simplex}")
        if len(set(image)) != len(image) or tuple(image) not in target:
            raise InputError(f"faced simplex {simplex} is not mapped isomorphically")

    def image_of(simplex: Simplex) -> OrientedSimplex:
        return OrientedSimplex.from_vertices([vertex_map[v] for v in simplex])

    simplices = source.simplices(form.degree)
    if isinstance(form, VValuedForm):
        return VValuedForm(
            form.degree, form.dim, {s: form(image_of(s)) for s in simplices}
        )
    return GValuedForm(form.degree, form.group, {s: form(image_of(s)) for s in simplices})
