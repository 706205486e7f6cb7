"""
Invariant polynomials of compact Lie groups and the moments they preserve.

Degrees of the fundamental invariants follow the classical tables. A linear map T
preserves the second moments of a Gaussian with covariance ``g^-1`` exactly when
``T^t g^-1 T = g^-1``.
"""

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from scipy.stats import special_ortho_group

from ..utils.errors import InputError
from ..utils.helpers import make_rng
from ..utils.logger import get_logger

logger = get_logger(__name__)


class LieFamily(str, Enum):
    SU = "su"
    SO_ODD = "so_odd"
    SP = "sp"
    SO_EVEN = "so_even"
    G2 = "g2"
    F4 = "f4"
    E6 = "e6"
    E7 = "e7"
    E8 = "e8"


_EXCEPTIONAL: Dict[LieFamily, List[int]] = {
    LieFamily.G2: [2, 6],
    LieFamily.F4: [2, 6, 8, 12],
    LieFamily.E6: [2, 5, 6, 8, 9, 12],
    LieFamily.E7: [2, 6, 8, 10, 12, 14, 18],
    LieFamily.E8: [2, 8, 12, 14, 18, 20, 24, 30],
}

_MIN_RANK = {LieFamily.SU: 2, LieFamily.SO_ODD: 1, LieFamily.SP: 1, LieFamily.SO_EVEN: 2}


@dataclass(frozen=True)
class DegreesTable:
    family: LieFamily
    rank: Optional[int]
    degrees: List[int]

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.family.value, "rank": self.rank, "degrees": list(self.degrees)}


def invariant_degrees(family: Union[LieFamily, str], rank: Optional[int] = None) -> List[int]:
    """
    Degrees of the fundamental invariants.

    ``rank`` is N in SU(N), SO(2N+1), Sp(N) and SO(2N); exceptional families take no
    parameter.
    """
    try:
        kind = LieFamily(family)
    except ValueError:
        raise InputError(f"unknown Lie family {family!r}") from None
    if kind in _EXCEPTIONAL:
        return list(_EXCEPTIONAL[kind])
    if rank is None or rank < _MIN_RANK[kind]:
        raise InputError(f"{kind.value} needs N >= {_MIN_RANK[kind]}, got {rank}")
    if kind is LieFamily.SU:
        return list(range(2, rank + 1))
    if kind in (LieFamily.SO_ODD, LieFamily.SP):
        return [2 * i for i in range(1, rank + 1)]
    return [2 * i for i in range(1, rank)] + [rank]


def degrees_table(family: Union[LieFamily, str], rank: Optional[int] = None) -> DegreesTable:
    kind = LieFamily(family)
    return DegreesTable(kind, rank, invariant_degrees(kind, rank))


def admits_odd_invariant(family: Union[LieFamily, str], rank: Optional[int] = None) -> bool:
    """Whether some invariant polynomial has odd degree, e.g. a skewness-type moment"""
    return any(d % 2 for d in invariant_degrees(family, rank))


# Moment preservation


def _checked_pd(g: Any) -> np.ndarray:
    matrix = np.atleast_2d(np.asarray(g, dtype=float))
    if matrix.shape[0] != matrix.shape[1] or not np.allclose(matrix, matrix.T):
        raise InputError("g must be a symmetric square matrix")
    try:
        np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        raise InputError("g must be positive definite") from None
    return matrix


def moment_preservation_residual(t: Any, g: Any) -> float:
    """Largest entry of ``T^t g^-1 T - g^-1``"""
    matrix = np.atleast_2d(np.asarray(t, dtype=float))
    metric = _checked_pd(g)
    if matrix.shape != metric.shape:
        raise InputError(f"T has shape {matrix.shape}, g has shape {metric.shape}")
    inverse = np.linalg.inv(metric)
    return float(np.max(np.abs(matrix.T @ inverse @ matrix - inverse)))


def moment_preservation_check(t: Any, g: Any, tol: float = 1e-9) -> bool:
    return moment_preservation_residual(t, g) < tol


def sample_so_g(g: Any, seed: Union[int, np.random.Generator, None] = None) -> np.ndarray:
    """Random element ``A Q A^-1`` of SO(g), with ``A A^t = g`` and Q uniform in SO(n)"""
    metric = _checked_pd(g)
    n = metric.shape[0]
    if n < 2:
        raise InputError("SO(g) sampling needs dimension >= 2")
    factor = np.linalg.cholesky(metric)
    rotation = special_ortho_group.rvs(n, random_state=make_rng(seed))
    return factor @ rotation @ np.linalg.inv(factor)


# Symmetrized trace tensors


def _flatten(basis: Sequence[Any]) -> np.ndarray:
    return np.array([np.asarray(b, dtype=complex).ravel() for b in basis]).T


def structure_constants(basis: Sequence[Any], tol: float = 1e-9) -> np.ndarray:
    """
    ``C[a, c, b]`` with ``[T_a, T_b] = sum_c C[a, c, b] T_c``.

    Raises when some commutator leaves the span of the basis.
    """
    matrices = [np.asarray(b, dtype=complex) for b in basis]
    if not matrices:
        raise InputError("an empty basis spans no algebra")
    flat = _flatten(matrices)
    size = len(matrices)
    constants = np.zeros((size, size, size), dtype=complex)
    for a, b in itertools.product(range(size), repeat=2):
        bracket = matrices[a] @ matrices[b] - matrices[b] @ matrices[a]
        coords, *_ = np.linalg.lstsq(flat, bracket.ravel(), rcond=None)
        if np.max(np.abs(flat @ coords - bracket.ravel()), initial=0.0) > tol:
            raise InputError(f"[T_{a}, T_{b}] is not in the span of the basis")
        constants[a, :, b] = coords
    return np.real_if_close(constants, tol=1000)


def symmetrized_trace_tensor(basis: Sequence[Any], k: int) -> np.ndarray:
    """``2^(2-2k) / k! sum_sigma Tr(T_b_sigma(1) .. T_b_sigma(k))``"""
    if not 1 <= k <= 3:
        raise InputError(f"symmetrized traces are provided for 1 <= k <= 3, got {k}")
    matrices = [np.asarray(b, dtype=complex) for b in basis]
    structure_constants(matrices)
    size = len(matrices)
    prefactor = 2.0 ** (2 - 2 * k) / math.factorial(k)
    tensor = np.zeros((size,) * k, dtype=complex)
    for index in itertools.product(range(size), repeat=k):
        total = 0.0 + 0.0j
        for order in itertools.permutations(index):
            product = np.eye(matrices[0].shape[0], dtype=complex)
            for b in order:
                product = product @ matrices[b]
            total += np.trace(product)
        tensor[index] = prefactor * total
    return np.real_if_close(tensor, tol=1000)


def ad_invariance_residual(tensor: np.ndarray, basis: Sequence[Any]) -> float:
    """
    Size of the derivative of the induced polynomial along adjoint directions.

    For every a the contraction of each slot of the tensor with ``ad T_a`` is summed
    over slots; an invariant tensor gives zero.
    """
    constants = structure_constants(basis)
    k = tensor.ndim
    worst = 0.0
    for a in range(constants.shape[0]):
        variation = np.zeros(tensor.shape, dtype=complex)
        for slot in range(k):
            contracted = np.tensordot(constants[a], tensor, axes=([0], [slot]))
            variation = variation + np.moveaxis(contracted, 0, slot)
        worst = max(worst, float(np.max(np.abs(variation), initial=0.0)))
    return worst
