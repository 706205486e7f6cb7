"""
Material fields and the Gaussian population they are drawn from
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy.spatial import distance
from scipy.stats import multivariate_normal

from ..forms.forms import GValuedForm, VValuedForm
from ..topology.complex import SimplicialComplex
from ..utils.errors import InputError
from ..utils.helpers import make_rng
from ..utils.logger import get_logger

logger = get_logger(__name__)

Seed = Union[int, np.random.Generator, None]


def _checked_covariance(covariance: Any) -> np.ndarray:
    matrix = np.atleast_2d(np.asarray(covariance, dtype=float))
    if matrix.shape[0] != matrix.shape[1]:
        raise InputError(f"covariance must be square, got shape {matrix.shape}")
    if not np.allclose(matrix, matrix.T, atol=1e-12):
        raise InputError("covariance must be symmetric")
    eigenvalues = np.linalg.eigvalsh(matrix)
    if eigenvalues.min() <= 0.0:
        raise InputError(
            f"covariance must be positive definite, smallest eigenvalue {eigenvalues.min():.3g}"
        )
    return matrix


@dataclass(frozen=True)
class DistributionSpec:
    """Gaussian population ``N(mean, covariance)``"""

    covariance: np.ndarray
    mean: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        matrix = _checked_covariance(self.covariance)
        object.__setattr__(self, "covariance", matrix)
        if self.mean is None:
            mean = np.zeros(matrix.shape[0])
        else:
            mean = np.asarray(self.mean, dtype=float).reshape(-1)
            if mean.shape[0] != matrix.shape[0]:
                raise InputError(
                    f"mean has {mean.shape[0]} entries, covariance is {matrix.shape[0]}x{matrix.shape[0]}"
                )
        object.__setattr__(self, "mean", mean)

    @classmethod
    def standard(cls, dim: int) -> "DistributionSpec":
        return cls(np.eye(dim))

    @property
    def dim(self) -> int:
        return int(self.covariance.shape[0])

    @property
    def precision(self) -> np.ndarray:
        return np.linalg.inv(self.covariance)

    @property
    def is_centered_isotropic(self) -> bool:
        """Radial densities are invariant under orthogonal actions"""
        assert self.mean is not None
        return bool(
            np.allclose(self.mean, 0.0)
            and np.allclose(self.covariance, self.covariance[0, 0] * np.eye(self.dim))
        )

    def density(self, x: Sequence[float]) -> float:
        return float(multivariate_normal.pdf(np.asarray(x, dtype=float), self.mean, self.covariance))

    def sample(self, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
        return rng.multivariate_normal(self.mean, self.covariance, size=size)

    def to_dict(self) -> Dict[str, Any]:
        assert self.mean is not None
        return {"mean": self.mean.tolist(), "covariance": self.covariance.tolist()}

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "DistributionSpec":
        return cls(np.asarray(payload["covariance"], dtype=float), payload.get("mean"))


@dataclass(frozen=True)
class MaterialField:
    """Internal state vector per vertex"""

    values: Mapping[int, np.ndarray]
    dim: int = field(default=0)

    def __post_init__(self) -> None:
        if not self.values:
            raise InputError("a material field needs at least one vertex")
        arrays = {int(v): np.asarray(x, dtype=float).reshape(-1) for v, x in self.values.items()}
        dims = {a.shape[0] for a in arrays.values()}
        if len(dims) != 1:
            raise InputError(f"field vectors have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "values", arrays)
        object.__setattr__(self, "dim", dims.pop())

    def __call__(self, vertex: int) -> np.ndarray:
        try:
            return self.values[vertex]
        except KeyError:
            raise InputError(f"the field is not defined on vertex {vertex}") from None

    @property
    def vertices(self) -> Sequence[int]:
        return sorted(self.values)

    def covers(self, complex_: SimplicialComplex) -> bool:
        return set(complex_.vertices) <= set(self.values)

    def with_value(self, vertex: int, value: Sequence[float]) -> "MaterialField":
        updated = dict(self.values)
        updated[vertex] = np.asarray(value, dtype=float)
        return MaterialField(updated)

    def acted_on(self, gauge: GValuedForm) -> "MaterialField":
        """``v(X) -> F(X) v(X)`` for a gauge 0-form F"""
        if gauge.degree != 0:
            raise InputError("a gauge transform is a group-valued 0-form")
        group = gauge.group
        return MaterialField(
            {v: group.act_on_vector(gauge((v,)), x) for v, x in self.values.items()}
        )

    def to_form(self) -> VValuedForm:
        return VValuedForm(0, self.dim, {(v,): x for v, x in self.values.items()})

    def to_frame(self) -> pd.DataFrame:
        rows = [[v] + list(self.values[v]) for v in self.vertices]
        return pd.DataFrame(rows, columns=["vertex"] + [f"x{i}" for i in range(self.dim)])

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "values": {str(v): self.values[v].tolist() for v in self.vertices}}

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "MaterialField":
        return cls({int(v): np.asarray(x, dtype=float) for v, x in payload["values"].items()})


def sample_field(
    dist: DistributionSpec, complex_: SimplicialComplex, seed: Seed = None
) -> MaterialField:
    """Independent Gaussian draw per vertex, in vertex order"""
    rng = make_rng(seed)
    values = {v: dist.sample(rng) for v in complex_.vertices}
    logger.debug(f"[EVOLVE] Sampled a {dist.dim}-dimensional field on {len(values)} vertices")
    return MaterialField(values)


def mahalanobis(v: Sequence[float], w: Sequence[float], covariance: Any = None) -> float:
    """``sqrt((v - w)^T covariance^-1 (v - w))``, Euclidean when no covariance is given"""
    a = np.asarray(v, dtype=float).reshape(-1)
    b = np.asarray(w, dtype=float).reshape(-1)
    if a.shape != b.shape:
        raise InputError(f"vectors of different lengths {a.shape[0]} and {b.shape[0]}")
    matrix = np.eye(a.shape[0]) if covariance is None else _checked_covariance(covariance)
    if matrix.shape[0] != a.shape[0]:
        raise InputError("covariance does not match the vector dimension")
    return float(distance.mahalanobis(a, b, np.linalg.inv(matrix)))
