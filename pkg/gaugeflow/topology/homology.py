"""
Integer Smith normal form, simplicial chain complexes and homology.

``smith_normal_form`` returns unimodular transforms ``U`` and ``V`` with
``U @ A @ V == D``. The same decomposition serves homology ranks and torsion,
cohomology with cyclic coefficients and coboundary-image membership tests.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.errors import InputError
from ..utils.logger import get_logger
from .complex import SimplicialComplex

logger = get_logger(__name__)


@dataclass(frozen=True)
class SmithForm:
    """``U @ matrix @ V == D`` with ``D`` diagonal, positive invariant factors"""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def invariant_factors(self) -> List[int]:
        diagonal = [int(self.D[i, i]) for i in range(min(self.D.shape))]
        return [d for d in diagonal if d != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _swap_rows(m: np.ndarray, i: int, j: int) -> None:
    m[[i, j], :] = m[[j, i], :]


def _swap_cols(m: np.ndarray, i: int, j: int) -> None:
    m[:, [i, j]] = m[:, [j, i]]


def smith_normal_form(matrix: np.ndarray) -> SmithForm:
    """Smith normal form over the integers with row/column transforms"""
    A = np.array(matrix, dtype=object)
    if A.ndim != 2:
        raise InputError("Smith normal form needs a 2-d matrix")
    rows, cols = A.shape
    U = np.array(np.eye(rows, dtype=int), dtype=object)
    V = np.array(np.eye(cols, dtype=int), dtype=object)

    for t in range(min(rows, cols)):
        while True:
            nonzero = [
                (abs(A[i, j]), i, j)
                for i in range(t, rows)
                for j in range(t, cols)
                if A[i, j] != 0
            ]
            if not nonzero:
                return SmithForm(U, A, V)
            _, pi, pj = min(nonzero)
            _swap_rows(A, t, pi)
            _swap_rows(U, t, pi)
            _swap_cols(A, t, pj)
            _swap_cols(V, t, pj)

            clean = True
            for i in range(t + 1, rows):
                q = A[i, t] // A[t, t]
                if q:
                    A[i, :] -= q * A[t, :]
                    U[i, :] -= q * U[t, :]
                if A[i, t] != 0:
                    clean = False
            for j in range(t + 1, cols):
                q = A[t, j] // A[t, t]
                if q:
                    A[:, j] -= q * A[:, t]
                    V[:, j] -= q * V[:, t]
                if A[t, j] != 0:
                    clean = False
            if not clean:
                continue

            pivot = A[t, t]
            offender = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if A[i, j] % pivot != 0
                ),
                None,
            )
            if offender is None:
                break
            A[t, :] += A[offender, :]
            U[t, :] += U[offender, :]

        if A[t, t] < 0:
            A[t, :] *= -1
            U[t, :] *= -1
    return SmithForm(U, A, V)


@dataclass(frozen=True)
class AbelianGroup:
    """
    Finitely generated abelian group as a product of cyclic factors.

    A factor of 0 stands for Z, a factor m > 1 for Z_m. The empty product is trivial.
    """

    factors: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(f < 0 or f == 1 for f in self.factors):
            raise InputError(f"cyclic factors must be 0 (for Z) or > 1: {self.factors}")

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def reduce(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        if len(coeffs) != len(self.factors):
            raise InputError(
                f"expected {len(self.factors)} coefficients, got {len(coeffs)}"
            )
        return tuple(int(c) % f if f else int(c) for c, f in zip(coeffs, self.factors))

    def zero(self) -> Tuple[int, ...]:
        return tuple(0 for _ in self.factors)

    def add(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def negate(self, a: Sequence[int]) -> Tuple[int, ...]:
        return self.reduce([-x for x in a])

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " x ".join("Z" if f == 0 else f"Z{f}" for f in self.factors)


@dataclass(frozen=True)
class HomologyDescriptor:
    """Free rank plus invariant-factor torsion"""

    rank: int
    torsion: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def to_dict(self, k: int) -> Dict[str, Any]:
        return {"k": k, "rank": self.rank, "torsion": list(self.torsion)}


def invariant_factors_of(orders: Sequence[int]) -> Tuple[int, ...]:
    """Normalize a list of cyclic orders to invariant factors (each divides the next)"""
    orders = [o for o in orders if o > 1]
    if not orders:
        return ()
    return tuple(f for f in smith_normal_form(np.diag(orders)).invariant_factors if f > 1)


def boundary_matrix(complex_: SimplicialComplex, k: int) -> np.ndarray:
    """Matrix of the boundary C_k -> C_{k-1} in the reference orientations"""
    columns = complex_.simplices(k)
    rows = complex_.simplices(k - 1) if k >= 1 else ()
    matrix = np.zeros((len(rows), len(columns)), dtype=int)
    for col, simplex in enumerate(columns):
        for i in range(len(simplex)):
            face = simplex[:i] + simplex[i + 1 :]
            if face:
                matrix[complex_.index(face), col] = (-1) ** i
    return matrix


def simplicial_homology(complex_: SimplicialComplex, k: int) -> HomologyDescriptor:
    """H_k of the complex with integer coefficients"""
    if k < 0:
        raise InputError("homology degree must be non-negative")
    chains = complex_.count(k)
    if chains == 0:
        return HomologyDescriptor(0)
    rank_k = smith_normal_form(boundary_matrix(complex_, k)).rank if k > 0 else 0
    upper = smith_normal_form(boundary_matrix(complex_, k + 1))
    descriptor = HomologyDescriptor(
        chains - rank_k - upper.rank,
        tuple(f for f in upper.invariant_factors if f > 1),
    )
    logger.debug(f"[HOMOLOGY] H_{k} of {complex_!r}: {descriptor}")
    return descriptor


def betti_numbers(complex_: SimplicialComplex) -> List[int]:
    return [
        simplicial_homology(complex_, k).rank for k in range(complex_.dimension + 1)
    ]


def in_column_image(
    form: SmithForm, target: Sequence[int], modulus: Optional[int] = None
) -> bool:
    """
    Decide whether ``target`` lies in the column image of the decomposed matrix.

    ``modulus=None`` works over Z, otherwise over Z_modulus.
    """
    b = np.array([int(x) for x in target], dtype=object)
    if b.shape[0] != form.U.shape[0]:
        raise InputError("target length does not match the matrix row count")
    transformed = form.U.dot(b) if b.size else b
    rows = form.D.shape[0]
    for i in range(rows):
        d = int(form.D[i, i]) if i < min(form.D.shape) else 0
        value = int(transformed[i])
        if modulus is None:
            if d == 0:
                if value != 0:
                    return False
            elif value % d != 0:
                return False
        else:
            if value % math.gcd(d, modulus) != 0:
                return False
    return True
