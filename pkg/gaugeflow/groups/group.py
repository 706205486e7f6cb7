"""
Gauge group backends for gaugeflow.

Provides a factory over the supported structure groups with easy switching between
them. Every backend implements the same interface: group law, representation on the
internal space V, exponential and logarithm, the bi-invariant geodesic distance and
random sampling.

Supported kinds:
- ``cyclic``: Z_m, acting by m-th roots of unity on the (0, 1) plane (Z_2 by sign)
- ``u1``: the circle group, acting by rotation on the (0, 1) plane
- ``o`` / ``so``: orthogonal and special orthogonal groups in the defining
  representation
- ``su``: SU(2), acting on C^2 = R^4 through its real form

Example:
    ```python
    G = create_group({"kind": "so", "n": 3})
    g = G.exp_map(G.algebra_from_coords([0.0, 0.0, np.pi / 2]))
    G.act_on_vector(g, [1.0, 0.0, 0.0])
    ```
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Type, Union

import numpy as np
from scipy.linalg import expm, logm, polar
from scipy.stats import ortho_group, special_ortho_group

from ..config.settings import get_settings
from ..utils.errors import InputError, SingularInputError, UnsupportedError
from ..utils.helpers import make_rng, wrap_angle
from ..utils.logger import get_logger

logger = get_logger(__name__)

# Rotation angles within this margin of pi are treated as sitting on the cut
BRANCH_CUT_MARGIN = 1e-6


class GroupKind(Enum):
    """Supported structure groups"""

    CYCLIC = "cyclic"
    CIRCLE = "u1"
    ORTHOGONAL = "o"
    SPECIAL_ORTHOGONAL = "so"
    SPECIAL_UNITARY = "su"


@dataclass(frozen=True)
class GroupSpec:
    """
    Group descriptor as it appears in experiment configs.

    ``n`` is the order for ``cyclic``, the matrix size otherwise (2 for ``su``).
    """

    kind: GroupKind
    n: int = 1
    rep_dim: Optional[int] = None
    epsilon: Optional[float] = None

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "GroupSpec":
        try:
            kind = GroupKind(payload["kind"])
        except (KeyError, ValueError) as e:
            raise InputError(f"unknown group kind in {dict(payload)}") from e
        default_n = {GroupKind.CIRCLE: 1, GroupKind.SPECIAL_UNITARY: 2}.get(kind, 2)
        return cls(
            kind=kind,
            n=int(payload.get("n", payload.get("m", default_n))),
            rep_dim=payload.get("rep_dim"),
            epsilon=payload.get("epsilon"),
        )

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"kind": self.kind.value, "n": self.n}
        if self.rep_dim is not None:
            payload["rep_dim"] = self.rep_dim
        return payload


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of a gauge group; ``payload`` is int, angle or matrix by kind"""

    group: "GaugeGroup"
    payload: Any

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.multiply(self, other)

    def inv(self) -> "GroupElement":
        return self.group.inverse(self)

    def matrix(self) -> np.ndarray:
        """Representation matrix acting on V"""
        return self.group.representation(self)

    def is_identity(self, tol: Optional[float] = None) -> bool:
        return self.group.is_identity(self, tol)

    def close_to(self, other: "GroupElement", tol: Optional[float] = None) -> bool:
        return self.group.close(self, other, tol)

    def __repr__(self) -> str:
        if isinstance(self.payload, np.ndarray):
            return f"GroupElement({self.group.name}, matrix)"
        return f"GroupElement({self.group.name}, {self.payload})"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Lie algebra element: angle for the circle, skew or anti-Hermitian matrix"""

    group: "GaugeGroup"
    data: Any

    def scaled(self, factor: float) -> "AlgebraElement":
        return AlgebraElement(self.group, self.data * factor)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.group, self.data + other.data)

    def norm(self) -> float:
        return float(np.linalg.norm(np.atleast_1d(self.data)))

    def coords(self) -> np.ndarray:
        return self.group.algebra_coords(self)


class GaugeGroup(ABC):
    """Abstract base for group backends"""

    is_abelian: bool = False
    is_discrete: bool = False

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.epsilon = spec.epsilon or get_settings().group_epsilon
        self.rep_dim = self._resolve_rep_dim(spec.rep_dim)

    # Backend hooks

    @abstractmethod
    def _resolve_rep_dim(self, requested: Optional[int]) -> int:
        pass

    @abstractmethod
    def _identity_payload(self) -> Any:
        pass

    @abstractmethod
    def _multiply(self, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def _inverse(self, a: Any) -> Any:
        pass

    @abstractmethod
    def _validate(self, payload: Any) -> Any:
        pass

    @abstractmethod
    def _representation(self, payload: Any) -> np.ndarray:
        pass

    @abstractmethod
    def _random(self, rng: np.random.Generator) -> Any:
        pass

    @abstractmethod
    def _difference(self, a: Any, b: Any) -> float:
        pass

    def _exp(self, data: Any) -> Any:
        raise UnsupportedError(f"{self.name} has no exponential map")

    def _log(self, payload: Any) -> Any:
        raise UnsupportedError(f"{self.name} has no logarithm")

    def algebra_basis(self) -> List[AlgebraElement]:
        raise UnsupportedError(f"{self.name} has no Lie algebra")

    def _to_json(self, payload: Any) -> Any:
        return np.asarray(payload).ravel().tolist()

    def _from_json(self, value: Any) -> Any:
        return np.asarray(value, dtype=float).reshape(self.spec.n, self.spec.n)

    # Public interface

    @property
    def name(self) -> str:
        return f"{self.spec.kind.value}({self.spec.n})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaugeGroup):
            return NotImplemented
        return (self.spec.kind, self.spec.n, self.rep_dim) == (
            other.spec.kind,
            other.spec.n,
            other.rep_dim,
        )

    def __hash__(self) -> int:
        return hash((self.spec.kind, self.spec.n, self.rep_dim))

    def __repr__(self) -> str:
        return f"GaugeGroup({self.name}, rep_dim={self.rep_dim})"

    def element(self, payload: Any) -> GroupElement:
        return GroupElement(self, self._validate(payload))

    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity_payload())

    def _check_owner(self, *elements: GroupElement) -> None:
        for g in elements:
            if g.group != self:
                raise InputError(f"element of {g.group.name} used with {self.name}")

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._check_owner(g, h)
        return GroupElement(self, self._multiply(g.payload, h.payload))

    def inverse(self, g: GroupElement) -> GroupElement:
        self._check_owner(g)
        return GroupElement(self, self._inverse(g.payload))

    def product(self, elements: Sequence[GroupElement]) -> GroupElement:
        """Ordered product ``elements[0] * elements[1] * ...``"""
        result = self.identity()
        for g in elements:
            result = self.multiply(result, g)
        return result

    def conjugate(self, k: GroupElement, g: GroupElement) -> GroupElement:
        """``k g k^-1``"""
        return self.multiply(self.multiply(k, g), self.inverse(k))

    def representation(self, g: GroupElement) -> np.ndarray:
        self._check_owner(g)
        return self._representation(g.payload)

    def trace(self, g: GroupElement) -> float:
        return float(np.real(np.trace(self.representation(g))))

    def act_on_vector(self, g: GroupElement, v: Sequence[float]) -> np.ndarray:
        vector = np.asarray(v, dtype=float)
        if vector.shape != (self.rep_dim,):
            raise InputError(
                f"{self.name} acts on vectors of dimension {self.rep_dim}, "
                f"got shape {vector.shape}"
            )
        return self.representation(g) @ vector

    def distance_residual(self, g: GroupElement, h: GroupElement) -> float:
        """Payload-level difference used for approximate equality"""
        self._check_owner(g, h)
        return self._difference(g.payload, h.payload)

    def close(
        self, g: GroupElement, h: GroupElement, tol: Optional[float] = None
    ) -> bool:
        return self.distance_residual(g, h) <= (tol if tol is not None else self.epsilon)

    def is_identity(self, g: GroupElement, tol: Optional[float] = None) -> bool:
        return self.close(g, self.identity(), tol)

    def exp_map(self, a: AlgebraElement) -> GroupElement:
        return GroupElement(self, self._exp(a.data))

    def log_map(self, g: GroupElement) -> AlgebraElement:
        self._check_owner(g)
        return AlgebraElement(self, self._log(g.payload))

    def geodesic_distance(self, g: GroupElement, h: GroupElement) -> float:
        """Norm of ``log(g^-1 h)``"""
        return self.log_map(self.multiply(self.inverse(g), h)).norm()

    def geodesic(self, g: GroupElement, h: GroupElement, t: float) -> GroupElement:
        """Point at parameter ``t`` on the shortest geodesic from ``g`` to ``h``"""
        step = self.log_map(self.multiply(self.inverse(g), h)).scaled(t)
        return self.multiply(g, self.exp_map(step))

    def random_element(
        self, rng: Union[int, np.random.Generator, None] = None
    ) -> GroupElement:
        return GroupElement(self, self._random(make_rng(rng)))

    def random_algebra(
        self, rng: Union[int, np.random.Generator, None] = None, scale: float = 1.0
    ) -> AlgebraElement:
        generator = make_rng(rng)
        basis = self.algebra_basis()
        coords = generator.normal(scale=scale, size=len(basis))
        return self.algebra_from_coords(coords)

    def algebra_from_coords(self, coords: Sequence[float]) -> AlgebraElement:
        basis = self.algebra_basis()
        if len(coords) != len(basis):
            raise InputError(
                f"{self.name} algebra has dimension {len(basis)}, got {len(coords)}"
            )
        data = sum((float(c) * b.data for c, b in zip(coords, basis)), 0 * basis[0].data)
        return AlgebraElement(self, data)

    def algebra_coords(self, a: AlgebraElement) -> np.ndarray:
        """Coordinates in the basis returned by ``algebra_basis``"""
        basis = self.algebra_basis()
        matrix = np.array([np.atleast_1d(b.data).ravel() for b in basis]).T
        target = np.atleast_1d(a.data).ravel()
        coords, *_ = np.linalg.lstsq(matrix, target, rcond=None)
        return np.real(coords)

    def element_key(self, g: GroupElement, decimals: int = 8) -> Tuple[Any, ...]:
        """Hashable rounded key for deduplicating elements"""
        values = np.atleast_1d(np.asarray(g.payload)).ravel()
        if np.iscomplexobj(values):
            values = np.concatenate([values.real, values.imag])
        return tuple(np.round(values.astype(float), decimals) + 0.0)

    def to_json(self, g: GroupElement) -> Any:
        return self._to_json(g.payload)

    def from_json(self, value: Any) -> GroupElement:
        return self.element(self._from_json(value))


class CyclicGroup(GaugeGroup):
    """Z_m with payloads in ``0 .. m-1``"""

    is_abelian = True
    is_discrete = True

    def __init__(self, spec: GroupSpec):
        if spec.n < 2:
            raise InputError("cyclic groups need order m >= 2")
        super().__init__(spec)

    @property
    def order(self) -> int:
        return self.spec.n

    def _resolve_rep_dim(self, requested: Optional[int]) -> int:
        minimum = 1 if self.spec.n == 2 else 2
        rep_dim = requested if requested is not None else minimum
        if rep_dim < minimum:
            raise InputError(f"Z_{self.spec.n} needs a representation dimension >= {minimum}")
        return rep_dim

    def _identity_payload(self) -> int:
        return 0

    def _multiply(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def _inverse(self, a: int) -> int:
        return (-a) % self.order

    def _validate(self, payload: Any) -> int:
        return int(payload) % self.order

    def _representation(self, payload: int) -> np.ndarray:
        if self.order == 2:
            return -np.eye(self.rep_dim) if payload else np.eye(self.rep_dim)
        return _plane_rotation(self.rep_dim, 2.0 * np.pi * payload / self.order)

    def _random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(self.order))

    def _difference(self, a: int, b: int) -> float:
        return 0.0 if a == b else 1.0

    def geodesic_distance(self, g: GroupElement, h: GroupElement) -> float:
        steps = self.multiply(self.inverse(g), h).payload
        return 2.0 * np.pi * min(steps, self.order - steps) / self.order

    def _to_json(self, payload: int) -> int:
        return int(payload)

    def _from_json(self, value: Any) -> int:
        return int(value)

    def from_sign(self, sign: int) -> GroupElement:
        """Z_2 element from a spin-style sign (+1 identity, -1 generator)"""
        if self.order != 2 or sign not in (1, -1):
            raise InputError("signs map only into Z_2 and must be +1 or -1")
        return self.element(0 if sign == 1 else 1)

    def sign(self, g: GroupElement) -> int:
        if self.order != 2:
            raise UnsupportedError("sign is only defined for Z_2")
        return -1 if g.payload else 1

    def element_key(self, g: GroupElement, decimals: int = 8) -> Tuple[Any, ...]:
        return (int(g.payload),)


class CircleGroup(GaugeGroup):
    """U(1) with payloads as principal angles in (-pi, pi]"""

    is_abelian = True

    def _resolve_rep_dim(self, requested: Optional[int]) -> int:
        rep_dim = requested if requested is not None else 2
        if rep_dim < 2:
            raise InputError("the circle group needs a representation dimension >= 2")
        return rep_dim

    def _identity_payload(self) -> float:
        return 0.0

    def _multiply(self, a: float, b: float) -> float:
        return wrap_angle(a + b)

    def _inverse(self, a: float) -> float:
        return wrap_angle(-a)

    def _validate(self, payload: Any) -> float:
        angle = float(payload)
        if not np.isfinite(angle):
            raise InputError("angles must be finite")
        return wrap_angle(angle)

    def _representation(self, payload: float) -> np.ndarray:
        return _plane_rotation(self.rep_dim, payload)

    def _random(self, rng: np.random.Generator) -> float:
        return wrap_angle(float(rng.uniform(-np.pi, np.pi)))

    def _difference(self, a: float, b: float) -> float:
        return abs(wrap_angle(a - b))

    def _exp(self, data: Any) -> float:
        return wrap_angle(float(data))

    def _log(self, payload: float) -> float:
        return float(payload)

    def algebra_basis(self) -> List[AlgebraElement]:
        return [AlgebraElement(self, 1.0)]

    def _to_json(self, payload: float) -> float:
        return float(payload)

    def _from_json(self, value: Any) -> float:
        return float(value)


class OrthogonalGroup(GaugeGroup):
    """O(n) or SO(n) in the defining representation"""

    def __init__(self, spec: GroupSpec):
        if spec.n < 2:
            raise InputError("orthogonal backends need n >= 2")
        super().__init__(spec)
        self.special = spec.kind is GroupKind.SPECIAL_ORTHOGONAL
        self.is_abelian = self.special and spec.n == 2

    def _resolve_rep_dim(self, requested: Optional[int]) -> int:
        if requested is not None and requested != self.spec.n:
            raise InputError(
                f"{self.spec.kind.value}({self.spec.n}) acts on R^{self.spec.n}, "
                f"not R^{requested}"
            )
        return self.spec.n

    def _identity_payload(self) -> np.ndarray:
        return np.eye(self.spec.n)

    def _multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._reproject(a @ b)

    def _inverse(self, a: np.ndarray) -> np.ndarray:
        return a.T.copy()

    def _reproject(self, m: np.ndarray) -> np.ndarray:
        residual = np.linalg.norm(m.T @ m - np.eye(self.spec.n))
        if residual <= 10 * self.epsilon:
            return m
        unitary, _ = polar(m)
        logger.debug(f"[GROUP] Re-projected {self.name} element (residual {residual:.2e})")
        return unitary

    def _validate(self, payload: Any) -> np.ndarray:
        m = np.asarray(payload, dtype=float)
        n = self.spec.n
        if m.shape != (n, n):
            raise InputError(f"{self.name} elements are {n}x{n} matrices")
        if np.linalg.norm(m.T @ m - np.eye(n)) > 1e-6:
            raise InputError("matrix is not orthogonal")
        if self.special and np.linalg.det(m) < 0:
            raise InputError(f"matrix has determinant -1, not in {self.name}")
        return self._reproject(m)

    def _representation(self, payload: np.ndarray) -> np.ndarray:
        return payload

    def _random(self, rng: np.random.Generator) -> np.ndarray:
        sampler = special_ortho_group if self.special else ortho_group
        return np.asarray(sampler.rvs(self.spec.n, random_state=rng)).reshape(
            self.spec.n, self.spec.n
        )

    def _difference(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(np.linalg.norm(a - b))

    def _exp(self, data: Any) -> np.ndarray:
        skew = np.asarray(data, dtype=float)
        if self.spec.n == 3:
            return _rodrigues(skew)
        return expm(skew)

    def _log(self, payload: np.ndarray) -> np.ndarray:
        if np.linalg.det(payload) < 0:
            raise SingularInputError(f"{self.name} element is outside the identity component")
        if self.spec.n == 3:
            return _so3_log(payload)
        if self.spec.n == 2:
            angle = np.arctan2(payload[1, 0], payload[0, 0])
            if np.pi - abs(angle) < BRANCH_CUT_MARGIN:
                raise SingularInputError("rotation angle is at the branch cut pi")
            return np.array([[0.0, -angle], [angle, 0.0]])
        eigenvalues = np.linalg.eigvals(payload)
        if np.any(np.abs(eigenvalues + 1.0) < BRANCH_CUT_MARGIN):
            raise SingularInputError("rotation has an angle at the branch cut pi")
        log = np.real(logm(payload))
        return 0.5 * (log - log.T)

    def algebra_basis(self) -> List[AlgebraElement]:
        n = self.spec.n
        basis = []
        if n == 3:
            # hat-map order: rotations about x, y, z
            for axis in range(3):
                e = np.zeros(3)
                e[axis] = 1.0
                basis.append(AlgebraElement(self, _hat(e)))
            return basis
        for i in range(n):
            for j in range(i + 1, n):
                generator = np.zeros((n, n))
                generator[j, i] = 1.0
                generator[i, j] = -1.0
                basis.append(AlgebraElement(self, generator))
        return basis

    def geodesic_distance(self, g: GroupElement, h: GroupElement) -> float:
        if not self.special and np.linalg.det(self.multiply(self.inverse(g), h).payload) < 0:
            raise SingularInputError("elements lie in different components of O(n)")
        return super().geodesic_distance(g, h)


class SpecialUnitaryGroup(GaugeGroup):
    """SU(2) acting on R^4 through the realification of C^2"""

    def __init__(self, spec: GroupSpec):
        if spec.n != 2:
            raise UnsupportedError("only SU(2) is supported among special unitary groups")
        super().__init__(spec)

    def _resolve_rep_dim(self, requested: Optional[int]) -> int:
        if requested not in (None, 4):
            raise InputError("SU(2) acts on R^4 in gaugeflow")
        return 4

    def _identity_payload(self) -> np.ndarray:
        return np.eye(2, dtype=complex)

    def _multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._reproject(a @ b)

    def _inverse(self, a: np.ndarray) -> np.ndarray:
        return a.conj().T.copy()

    def _reproject(self, m: np.ndarray) -> np.ndarray:
        residual = np.linalg.norm(m.conj().T @ m - np.eye(2))
        if residual <= 10 * self.epsilon:
            return m
        unitary, _ = polar(m)
        return unitary / np.sqrt(np.linalg.det(unitary))

    def _validate(self, payload: Any) -> np.ndarray:
        m = np.asarray(payload, dtype=complex)
        if m.shape != (2, 2):
            raise InputError("SU(2) elements are 2x2 complex matrices")
        if np.linalg.norm(m.conj().T @ m - np.eye(2)) > 1e-6:
            raise InputError("matrix is not unitary")
        if abs(np.linalg.det(m) - 1.0) > 1e-6:
            raise InputError("matrix does not have determinant 1")
        return self._reproject(m)

    def _representation(self, payload: np.ndarray) -> np.ndarray:
        re, im = payload.real, payload.imag
        return np.block([[re, -im], [im, re]])

    def _random(self, rng: np.random.Generator) -> np.ndarray:
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        a, b = complex(q[0], q[1]), complex(q[2], q[3])
        return np.array([[a, -b.conjugate()], [b, a.conjugate()]])

    def _difference(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(np.linalg.norm(a - b))

    def _exp(self, data: Any) -> np.ndarray:
        return expm(np.asarray(data, dtype=complex))

    def _log(self, payload: np.ndarray) -> np.ndarray:
        skew = 0.5 * (payload - payload.conj().T)
        sin_theta = np.linalg.norm(skew) / np.sqrt(2.0)
        cos_theta = float(np.real(np.trace(payload))) / 2.0
        theta = np.arctan2(sin_theta, cos_theta)
        if np.pi - theta < BRANCH_CUT_MARGIN:
            raise SingularInputError("SU(2) element is at the branch cut -I")
        if sin_theta < 1e-12:
            return np.zeros((2, 2), dtype=complex)
        return skew * (theta / sin_theta)

    def algebra_basis(self) -> List[AlgebraElement]:
        return [AlgebraElement(self, 0.5j * sigma) for sigma in PAULI]

    def _to_json(self, payload: np.ndarray) -> Dict[str, List[float]]:
        return {
            "re": payload.real.ravel().tolist(),
            "im": payload.imag.ravel().tolist(),
        }

    def _from_json(self, value: Any) -> np.ndarray:
        return (np.asarray(value["re"]) + 1j * np.asarray(value["im"])).reshape(2, 2)


PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _plane_rotation(dim: int, angle: float) -> np.ndarray:
    m = np.eye(dim)
    c, s = np.cos(angle), np.sin(angle)
    m[0, 0], m[0, 1], m[1, 0], m[1, 1] = c, -s, s, c
    return m


def _hat(w: np.ndarray) -> np.ndarray:
    return np.array([[0, -w[2], w[1]], [w[2], 0, -w[0]], [-w[1], w[0], 0]])


def _vee(m: np.ndarray) -> np.ndarray:
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def _rodrigues(skew: np.ndarray) -> np.ndarray:
    w = _vee(0.5 * (skew - skew.T))
    t = np.linalg.norm(w)
    if t < 1e-8:
        # second-order series keeps exp/log round trips at machine precision
        k = _hat(w)
        return np.eye(3) + k + 0.5 * k @ k
    k = _hat(w)
    return np.eye(3) + np.sin(t) / t * k + (1 - np.cos(t)) / t**2 * k @ k


def _so3_log(r: np.ndarray) -> np.ndarray:
    w = _vee(r - r.T) / 2.0
    sin_t = np.linalg.norm(w)
    cos_t = (np.trace(r) - 1.0) / 2.0
    t = np.arctan2(sin_t, cos_t)
    if np.pi - t < BRANCH_CUT_MARGIN:
        raise SingularInputError(f"rotation angle {t:.8f} is at the branch cut pi")
    factor = 1.0 + t * t / 6.0 if t < 1e-8 else t / sin_t
    return _hat(w * factor)


_BACKENDS: Dict[GroupKind, Type[GaugeGroup]] = {
    GroupKind.CYCLIC: CyclicGroup,
    GroupKind.CIRCLE: CircleGroup,
    GroupKind.ORTHOGONAL: OrthogonalGroup,
    GroupKind.SPECIAL_ORTHOGONAL: OrthogonalGroup,
    GroupKind.SPECIAL_UNITARY: SpecialUnitaryGroup,
}


def create_group(spec: Union[GroupSpec, Mapping[str, Any]]) -> GaugeGroup:
    """Create a group backend from a spec or its JSON form"""
    if not isinstance(spec, GroupSpec):
        spec = GroupSpec.from_dict(spec)
    group = _BACKENDS[spec.kind](spec)
    logger.debug(f"[GROUP] Created {group!r}")
    return group


# Convenience constructors


def cyclic(m: int, rep_dim: Optional[int] = None) -> CyclicGroup:
    return CyclicGroup(GroupSpec(GroupKind.CYCLIC, m, rep_dim))


def circle(rep_dim: int = 2) -> CircleGroup:
    return CircleGroup(GroupSpec(GroupKind.CIRCLE, 1, rep_dim))


def special_orthogonal(n: int) -> OrthogonalGroup:
    return OrthogonalGroup(GroupSpec(GroupKind.SPECIAL_ORTHOGONAL, n))


def orthogonal(n: int) -> OrthogonalGroup:
    return OrthogonalGroup(GroupSpec(GroupKind.ORTHOGONAL, n))


def su2() -> SpecialUnitaryGroup:
    return SpecialUnitaryGroup(GroupSpec(GroupKind.SPECIAL_UNITARY, 2))
