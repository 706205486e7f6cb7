"""
Cup products of cochains.

Cochains hold exact values (``fractions.Fraction`` or ``ExteriorVector``) on
reference-oriented simplices. The cup product evaluates front and back faces of an
explicitly ordered simplex; since faces of a reference ordering are again reference
ordered, the Leibniz rule holds exactly on reference orderings.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..groups.group import CircleGroup, CyclicGroup, GroupElement
from ..topology.complex import Simplex, SimplicialComplex, boundary_faces
from ..utils.errors import InputError, UnsupportedError
from .forms import GValuedForm, SimplexLike, as_oriented, differential_g

Blade = Tuple[int, ...]


class ExteriorVector:
    """Element of the exterior algebra of R^n with exact coefficients"""

    def __init__(self, terms: Optional[Mapping[Blade, Any]] = None):
        self.terms: Dict[Blade, Fraction] = {}
        for blade, coeff in (terms or {}).items():
            sign, canonical = _sort_blade(blade)
            if sign == 0:
                continue
            value = self.terms.get(canonical, Fraction(0)) + sign * Fraction(coeff)
            if value:
                self.terms[canonical] = value
            else:
                self.terms.pop(canonical, None)

    @classmethod
    def basis(cls, *indices: int) -> "ExteriorVector":
        """``e_i ^ e_j ^ ...``"""
        return cls({tuple(indices): 1})

    def wedge(self, other: "ExteriorVector") -> "ExteriorVector":
        result: Dict[Blade, Fraction] = {}
        for left, a in self.terms.items():
            for right, b in other.terms.items():
                sign, blade = _sort_blade(left + right)
                if sign:
                    result[blade] = result.get(blade, Fraction(0)) + sign * a * b
        return ExteriorVector(result)

    def grades(self) -> set:
        return {len(blade) for blade in self.terms}

    def __add__(self, other: "ExteriorVector") -> "ExteriorVector":
        merged = dict(self.terms)
        for blade, coeff in other.terms.items():
            merged[blade] = merged.get(blade, Fraction(0)) + coeff
        return ExteriorVector(merged)

    def __neg__(self) -> "ExteriorVector":
        return ExteriorVector({b: -c for b, c in self.terms.items()})

    def __sub__(self, other: "ExteriorVector") -> "ExteriorVector":
        return self + (-other)

    def __mul__(self, scalar: Any) -> "ExteriorVector":
        return ExteriorVector({b: c * Fraction(scalar) for b, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExteriorVector):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*e{'^e'.join(str(i) for i in b)}" if b else str(c)
            for b, c in sorted(self.terms.items())
        )


def _sort_blade(blade: Sequence[int]) -> Tuple[int, Blade]:
    if len(set(blade)) != len(blade):
        return 0, ()
    items = list(blade)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return sign, tuple(items)


CochainValue = Union[Fraction, ExteriorVector]


@dataclass
class Cochain:
    """Exact-valued k-cochain on reference orientations"""

    degree: int
    values: Dict[Simplex, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized: Dict[Simplex, Any] = {}
        for key, value in self.values.items():
            oriented = as_oriented(key)
            if oriented.dim != self.degree:
                raise InputError(f"{key} is not a {self.degree}-simplex")
            if not isinstance(value, ExteriorVector):
                value = Fraction(value)
            normalized[oriented.key] = value if oriented.orientation == 1 else -value
        self.values = normalized

    @classmethod
    def from_function(
        cls, complex_: SimplicialComplex, degree: int, fn: Callable[[Simplex], Any]
    ) -> "Cochain":
        return cls(degree, {s: fn(s) for s in complex_.simplices(degree)})

    def __call__(self, simplex: SimplexLike) -> Any:
        oriented = as_oriented(simplex)
        if oriented.key not in self.values:
            raise InputError(f"cochain has no value on {oriented}")
        value = self.values[oriented.key]
        return value if oriented.orientation == 1 else -value


def _zero_like(sample: Any) -> Any:
    return ExteriorVector() if isinstance(sample, ExteriorVector) else Fraction(0)


def coboundary(cochain: Cochain, complex_: SimplicialComplex) -> Cochain:
    values = {}
    for simplex in complex_.simplices(cochain.degree + 1):
        faces = boundary_faces(simplex)
        total = _zero_like(next(iter(cochain.values.values()), Fraction(0)))
        for face in faces:
            total = total + cochain(face)
        values[simplex] = total
    return Cochain(cochain.degree + 1, values)


def _split(ordering: Sequence[int], k: int, m: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    if len(ordering) != k + m + 1:
        raise InputError(
            f"a cup of degrees {k} and {m} is evaluated on {k + m}-simplices, "
            f"got {len(ordering) - 1}"
        )
    return tuple(ordering[: k + 1]), tuple(ordering[k:])


def cup_real(omega: Cochain, theta: Cochain, ordering: Sequence[int]) -> Fraction:
    """``omega(A_0..A_k) * theta(A_k..A_{k+m})``"""
    front, back = _split(ordering, omega.degree, theta.degree)
    return omega(front) * theta(back)


def cup_vector(omega: Cochain, theta: Cochain, ordering: Sequence[int]) -> ExteriorVector:
    """``omega(A_0..A_k) ^ theta(A_k..A_{k+m})`` for exterior-valued cochains"""
    front, back = _split(ordering, omega.degree, theta.degree)
    left, right = omega(front), theta(back)
    if not isinstance(left, ExteriorVector) or not isinstance(right, ExteriorVector):
        raise InputError("vector cup products need exterior-algebra values")
    return left.wedge(right)


def cup_product(
    omega: Cochain, theta: Cochain, complex_: SimplicialComplex
) -> Cochain:
    """Cup product as a cochain on reference orderings"""
    degree = omega.degree + theta.degree
    values = {}
    for simplex in complex_.simplices(degree):
        front, back = _split(simplex, omega.degree, theta.degree)
        left, right = omega(front), theta(back)
        if isinstance(left, ExteriorVector):
            values[simplex] = left.wedge(right)
        else:
            values[simplex] = left * right
    return Cochain(degree, values)


def leibniz_defect(
    omega: Cochain, theta: Cochain, complex_: SimplicialComplex
) -> Dict[Simplex, Any]:
    """Non-zero entries of ``d(w u t) - (dw u t + (-1)^k w u dt)``"""
    sign = -1 if omega.degree % 2 else 1
    lhs = coboundary(cup_product(omega, theta, complex_), complex_)
    first = cup_product(coboundary(omega, complex_), theta, complex_)
    second = cup_product(omega, coboundary(theta, complex_), complex_)
    defect = {}
    for simplex, value in lhs.values.items():
        difference = value - (first(simplex) + second(simplex) * sign)
        if difference != 0:
            defect[simplex] = difference
    return defect


# Abelian group-valued cup products


def _pair(g: GroupElement, h: Union[GroupElement, int]) -> GroupElement:
    group = g.group
    if isinstance(h, GroupElement):
        if not isinstance(group, CyclicGroup):
            raise UnsupportedError("only Z_m pairs two group-valued forms (ring product)")
        return group.element(g.payload * h.payload)
    return group.element(g.payload * int(h))


def _check_abelian(omega: GValuedForm) -> None:
    if not isinstance(omega.group, (CyclicGroup, CircleGroup)):
        raise UnsupportedError(
            f"cup products of {omega.group.name}-valued forms are not supported"
        )


def _theta_value(theta: Union[GValuedForm, Cochain], simplex: Sequence[int]) -> Any:
    if isinstance(theta, Cochain):
        value = theta(simplex)
        if Fraction(value).denominator != 1:
            raise InputError("the integer factor of a U(1) cup product must be integral")
        return int(value)
    return theta(simplex)


def cup_abelian_g(
    omega: GValuedForm,
    theta: Union[GValuedForm, Cochain],
    complex_: SimplicialComplex,
) -> GValuedForm:
    """
    Multiplicative cup product for abelian groups.

    Z_m forms pair through the ring product of Z_m. U(1) forms pair with an
    integer cochain by powers, ``g^n``.
    """
    _check_abelian(omega)
    degree = omega.degree + theta.degree
    values = {}
    for simplex in complex_.simplices(degree):
        front, back = _split(simplex, omega.degree, theta.degree)
        values[simplex] = _pair(omega(front), _theta_value(theta, back))
    return GValuedForm(degree, omega.group, values)


def _abelian_differential(
    form: Union[GValuedForm, Cochain], complex_: SimplicialComplex
) -> Union[GValuedForm, Cochain]:
    if isinstance(form, Cochain):
        return coboundary(form, complex_)
    return differential_g(form, complex_)


def abelian_leibniz_residual(
    omega: GValuedForm,
    theta: Union[GValuedForm, Cochain],
    complex_: SimplicialComplex,
) -> float:
    """Largest deviation in ``d(w u t) = (dw u t) (w u dt)^((-1)^k)``"""
    _check_abelian(omega)
    group = omega.group
    lhs = _abelian_differential(cup_abelian_g(omega, theta, complex_), complex_)
    first = cup_abelian_g(_abelian_differential(omega, complex_), theta, complex_)
    second = cup_abelian_g(omega, _abelian_differential(theta, complex_), complex_)
    worst = 0.0
    for simplex in complex_.simplices(omega.degree + theta.degree + 1):
        tail = second(simplex)
        if omega.degree % 2:
            tail = tail.inv()
        rhs = group.multiply(first(simplex), tail)
        worst = max(worst, group.distance_residual(lhs(simplex), rhs))
    return worst


def exterior_cochain(
    complex_: SimplicialComplex, degree: int, values: Mapping[Simplex, ExteriorVector]
) -> Cochain:
    """Exterior-valued cochain; missing simplices get zero"""
    return Cochain(
        degree,
        {s: values.get(s, ExteriorVector()) for s in complex_.simplices(degree)},
    )


def random_rational_cochain(
    complex_: SimplicialComplex, degree: int, rng: np.random.Generator, bound: int = 5
) -> Cochain:
    return Cochain.from_function(
        complex_,
        degree,
        lambda _: Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 4))),
    )
