"""
Moments, central moments and cumulants of multivariate samples, up to order four.

Tables are keyed by multi-indices: ``(2, 0, 1)`` is ``<x_0^2 x_2>``. Cumulants
(reduced moments) come from the moment table through the partition expansion

    kappa(S) = sum over partitions P of S of (-1)^(|P|-1) (|P|-1)! prod_B M(B)

which reproduces the explicit second, third and fourth order relations for
non-centered data.
"""

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from sympy.utilities.iterables import multiset_partitions

from ..utils.errors import InputError
from ..utils.logger import get_logger

logger = get_logger(__name__)

MultiIndex = Tuple[int, ...]
MAX_ORDER = 4


def multi_indices(dim: int, order: int) -> Iterator[MultiIndex]:
    """Exponent vectors of total degree ``order`` in ``dim`` variables"""
    for combo in itertools.combinations_with_replacement(range(dim), order):
        counts = [0] * dim
        for i in combo:
            counts[i] += 1
        yield tuple(counts)


def to_multi_index(coords: Sequence[int], dim: int) -> MultiIndex:
    counts = [0] * dim
    for i in coords:
        if not 0 <= i < dim:
            raise InputError(f"coordinate {i} out of range for dimension {dim}")
        counts[i] += 1
    return tuple(counts)


def _check_order(max_order: int) -> None:
    if not 0 <= max_order <= MAX_ORDER:
        raise InputError(f"orders are supported up to {MAX_ORDER}, got {max_order}")


@dataclass
class MomentTable:
    """Values per multi-index up to ``max_order``"""

    dim: int
    max_order: int
    values: Dict[MultiIndex, float] = field(default_factory=dict)
    kind: str = "raw"

    def __getitem__(self, index: Sequence[int]) -> float:
        key = tuple(int(i) for i in index)
        if len(key) != self.dim:
            raise InputError(f"multi-index {key} does not have {self.dim} entries")
        if key not in self.values:
            raise InputError(f"{self.kind} table has no entry for {key}")
        return self.values[key]

    def of_coords(self, coords: Sequence[int]) -> float:
        """Entry for a list of coordinates, e.g. ``[0, 0, 2]`` for ``<x_0^2 x_2>``"""
        return self[to_multi_index(coords, self.dim)]

    def order(self, k: int) -> Dict[MultiIndex, float]:
        return {i: v for i, v in self.values.items() if sum(i) == k}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "max_order": self.max_order,
            "values": {
                ",".join(str(i) for i in key): self.values[key] for key in sorted(self.values)
            },
        }

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "MomentTable":
        values = {
            tuple(int(i) for i in key.split(",")): float(v)
            for key, v in payload.get("values", {}).items()
        }
        return cls(int(payload["dim"]), int(payload["max_order"]), values, payload.get("kind", "raw"))


def _as_samples(samples: Any) -> np.ndarray:
    data = np.asarray(samples.to_numpy() if isinstance(samples, pd.DataFrame) else samples, dtype=float)
    if data.ndim == 1:
        data = data.reshape(1, -1)
    if data.ndim != 2 or data.shape[0] == 0 or data.shape[1] == 0:
        raise InputError("samples must be a non-empty (count, dim) array")
    return data


def _sample_table(data: np.ndarray, max_order: int, kind: str) -> MomentTable:
    dim = data.shape[1]
    values: Dict[MultiIndex, float] = {}
    for order in range(max_order + 1):
        for index in multi_indices(dim, order):
            monomial = np.prod(data ** np.asarray(index), axis=1)
            values[index] = float(np.mean(monomial))
    return MomentTable(dim, max_order, values, kind)


def raw_moments(samples: Any, max_order: int = MAX_ORDER) -> MomentTable:
    """Sample averages of every monomial up to ``max_order``"""
    _check_order(max_order)
    data = _as_samples(samples)
    logger.debug(f"[STATS] Raw moments of {data.shape[0]} samples in {data.shape[1]} dims")
    return _sample_table(data, max_order, "raw")


def central_moments(samples: Any, max_order: int = MAX_ORDER) -> MomentTable:
    _check_order(max_order)
    data = _as_samples(samples)
    return _sample_table(data - data.mean(axis=0), max_order, "central")


def cumulants(moments: MomentTable) -> MomentTable:
    """Reduced moments of orders 1 .. ``max_order`` from a raw or central table"""
    _check_order(moments.max_order)
    values: Dict[MultiIndex, float] = {}
    for order in range(1, moments.max_order + 1):
        for index in multi_indices(moments.dim, order):
            coords = [i for i, count in enumerate(index) for _ in range(count)]
            total = 0.0
            for partition in multiset_partitions(list(range(order))):
                blocks = len(partition)
                sign = (-1) ** (blocks - 1) * math.factorial(blocks - 1)
                product = 1.0
                for block in partition:
                    product *= moments.of_coords([coords[p] for p in block])
                total += sign * product
            values[index] = total
    return MomentTable(moments.dim, moments.max_order, values, "cumulant")


def gaussian_moment_4(g_inv: Any, i: int, j: int, k: int, l: int) -> float:
    """``g^ij g^kl + g^ik g^jl + g^il g^jk`` for a centered Gaussian with covariance g_inv"""
    c = np.asarray(g_inv, dtype=float)
    return float(c[i, j] * c[k, l] + c[i, k] * c[j, l] + c[i, l] * c[j, k])


def gaussian_moment_table(g_inv: Any, max_order: int = MAX_ORDER) -> MomentTable:
    """Exact moments of the centered Gaussian with covariance ``g_inv``"""
    _check_order(max_order)
    c = np.asarray(g_inv, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise InputError("covariance must be a square matrix")
    dim = c.shape[0]
    values: Dict[MultiIndex, float] = {}
    for order in range(max_order + 1):
        for index in multi_indices(dim, order):
            coords = [i for i, count in enumerate(index) for _ in range(count)]
            if order == 0:
                values[index] = 1.0
            elif order % 2:
                values[index] = 0.0
            elif order == 2:
                values[index] = float(c[coords[0], coords[1]])
            else:
                values[index] = gaussian_moment_4(c, *coords)
    return MomentTable(dim, max_order, values, "raw")


def cumulant_tensor(table: MomentTable, order: int) -> np.ndarray:
    """Symmetric array of shape ``(dim,) * order`` holding one order of a table"""
    if not 1 <= order <= table.max_order:
        raise InputError(f"order {order} is outside 1 .. {table.max_order}")
    tensor = np.zeros((table.dim,) * order)
    for coords in itertools.product(range(table.dim), repeat=order):
        tensor[coords] = table.of_coords(coords)
    return tensor


def max_abs_by_order(table: MomentTable) -> List[float]:
    """Largest absolute entry per order 1 .. max_order"""
    return [
        max((abs(v) for v in table.order(k).values()), default=0.0)
        for k in range(1, table.max_order + 1)
    ]


def empirical_cumulants(
    path: Union[str, Path], max_order: int = MAX_ORDER
) -> MomentTable:
    """Cumulants of the numeric columns of a samples CSV"""
    frame = pd.read_csv(path).select_dtypes(include="number")
    if frame.empty:
        raise InputError(f"{path} has no numeric sample columns")
    table = cumulants(raw_moments(frame, max_order))
    logger.info(
        f"[STATS] Cumulants of {len(frame)} samples from {path}: "
        f"max |kappa| by order {[round(v, 6) for v in max_abs_by_order(table)]}"
    )
    return table
