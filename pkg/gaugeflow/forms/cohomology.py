"""
Cochain cohomology with finitely generated abelian coefficients.

Coefficients are products of cyclic factors (Z written as factor 0). Each factor is
handled separately: Z through the integer Smith normal form of the coboundary
matrices, Z_m through the universal coefficient theorem. Membership of a closed
cochain in the coboundary image is decided with the same decomposition.
"""

import math
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from ..topology.complex import Simplex, SimplicialComplex
from ..topology.homology import (
    AbelianGroup,
    HomologyDescriptor,
    boundary_matrix,
    in_column_image,
    invariant_factors_of,
    simplicial_homology,
    smith_normal_form,
)
from ..utils.errors import InputError
from ..utils.logger import get_logger

logger = get_logger(__name__)

# Values per simplex: one integer per coefficient factor
CochainValues = Mapping[Simplex, Sequence[int]]


class ClassVerdict(Enum):
    """Cohomological status of a cochain"""

    TRIVIAL_CLASS = "trivial_class"
    NONTRIVIAL_CLASS = "nontrivial_class"
    NOT_CLOSED = "not_closed"


def coboundary_matrix(complex_: SimplicialComplex, k: int) -> np.ndarray:
    """Matrix of delta: C^k -> C^{k+1} (transpose of the boundary)"""
    return boundary_matrix(complex_, k + 1).T


def _component_vector(
    complex_: SimplicialComplex, k: int, values: CochainValues, component: int
) -> List[int]:
    vector = []
    for simplex in complex_.simplices(k):
        entry = values.get(simplex)
        vector.append(int(entry[component]) if entry is not None else 0)
    return vector


def _check_keys(complex_: SimplicialComplex, k: int, values: CochainValues) -> None:
    for key in values:
        if len(key) != k + 1 or tuple(key) not in complex_:
            raise InputError(f"{key} is not a {k}-simplex of the complex")


def cochain_cohomology(
    complex_: SimplicialComplex, coefficients: AbelianGroup, k: int
) -> HomologyDescriptor:
    """H^k of the complex with the given coefficients"""
    if k < 0:
        raise InputError("cohomology degree must be non-negative")
    rank = 0
    orders: List[int] = []
    homology_k = simplicial_homology(complex_, k)
    homology_below = simplicial_homology(complex_, k - 1) if k > 0 else HomologyDescriptor(0)
    for factor in coefficients.factors:
        if factor == 0:
            # H^k(Z) = Hom(H_k, Z) + Ext(H_{k-1}, Z)
            rank += homology_k.rank
            orders.extend(homology_below.torsion)
        else:
            orders.extend([factor] * homology_k.rank)
            orders.extend(math.gcd(t, factor) for t in homology_k.torsion)
            orders.extend(math.gcd(t, factor) for t in homology_below.torsion)
    return HomologyDescriptor(rank, invariant_factors_of(orders))


def coboundary_values(
    complex_: SimplicialComplex,
    coefficients: AbelianGroup,
    k: int,
    values: CochainValues,
) -> Dict[Simplex, Tuple[int, ...]]:
    """delta of a k-cochain, reduced in each coefficient factor"""
    _check_keys(complex_, k, values)
    matrix = coboundary_matrix(complex_, k)
    columns = []
    for component in range(len(coefficients.factors)):
        vector = np.array(_component_vector(complex_, k, values, component), dtype=int)
        columns.append(matrix @ vector if matrix.size else np.zeros(matrix.shape[0], dtype=int))
    result = {}
    for row, simplex in enumerate(complex_.simplices(k + 1)):
        entry = coefficients.reduce([int(column[row]) for column in columns])
        if any(entry):
            result[simplex] = entry
    return result


def is_cocycle(
    complex_: SimplicialComplex,
    coefficients: AbelianGroup,
    k: int,
    values: CochainValues,
) -> bool:
    return not coboundary_values(complex_, coefficients, k, values)


def is_coboundary(
    complex_: SimplicialComplex,
    coefficients: AbelianGroup,
    k: int,
    values: CochainValues,
) -> bool:
    """Whether the k-cochain is delta of some (k-1)-cochain"""
    _check_keys(complex_, k, values)
    if k == 0:
        return all(
            not any(coefficients.reduce(list(v))) for v in values.values()
        )
    form = smith_normal_form(coboundary_matrix(complex_, k - 1))
    for component, factor in enumerate(coefficients.factors):
        target = _component_vector(complex_, k, values, component)
        modulus = None if factor == 0 else factor
        if not in_column_image(form, target, modulus):
            return False
    return True


def classify_cochain(
    complex_: SimplicialComplex,
    coefficients: AbelianGroup,
    k: int,
    values: CochainValues,
) -> ClassVerdict:
    """Closedness first, then exactness"""
    if not is_cocycle(complex_, coefficients, k, values):
        return ClassVerdict.NOT_CLOSED
    if is_coboundary(complex_, coefficients, k, values):
        return ClassVerdict.TRIVIAL_CLASS
    logger.debug(f"[HOMOLOGY] Closed {k}-cochain with coefficients {coefficients} is not exact")
    return ClassVerdict.NONTRIVIAL_CLASS


def coboundary_of_vertex_values(
    complex_: SimplicialComplex,
    coefficients: AbelianGroup,
    vertex_values: Mapping[int, Sequence[int]],
) -> Dict[Simplex, Tuple[int, ...]]:
    """delta f of a 0-cochain given per vertex"""
    return coboundary_values(
        complex_, coefficients, 0, {(v,): tuple(c) for v, c in vertex_values.items()}
    )
