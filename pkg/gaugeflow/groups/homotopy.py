"""
Homotopy tables, homotopy classes and topological correction maps.

Tables cover degrees 0 to 3 for every backend. Degree 0 is the component group; the
obstruction machinery only uses degrees >= 1. The correction map beta_n sends a class
to a group element; it preserves the identity and is injective on the classes used
in practice (see the per-kind notes in ``beta_correction``).

Loops of U(1) and SO(3) elements are classified by lifting: angles are unwrapped
along principal-branch steps, rotations are lifted to unit quaternions through the
double cover. Either lift is ambiguous when a step reaches a rotation by pi.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import expm
from scipy.spatial.transform import Rotation

from ..topology.homology import AbelianGroup
from ..utils.errors import AmbiguousGeodesicError, InputError, UnsupportedError
from ..utils.helpers import wrap_angle
from ..utils.logger import get_logger
from .group import (
    BRANCH_CUT_MARGIN,
    CircleGroup,
    CyclicGroup,
    GaugeGroup,
    GroupElement,
    GroupKind,
    OrthogonalGroup,
    SpecialUnitaryGroup,
)

logger = get_logger(__name__)

# Scale of the generator used for the images of pi_3 classes
PI3_STEP = 0.1

Z = 0


def homotopy_group(group: GaugeGroup, n: int) -> AbelianGroup:
    """pi_n of the group as a product of cyclic factors"""
    if n < 0 or n > 3:
        raise UnsupportedError(f"homotopy tables cover degrees 0..3, not {n}")
    kind, size = group.spec.kind, group.spec.n

    if kind is GroupKind.CYCLIC:
        return AbelianGroup((size,)) if n == 0 else AbelianGroup()
    if kind is GroupKind.CIRCLE or (kind is GroupKind.SPECIAL_ORTHOGONAL and size == 2):
        return AbelianGroup((Z,)) if n == 1 else AbelianGroup()
    if kind is GroupKind.SPECIAL_UNITARY:
        return AbelianGroup((Z,)) if n == 3 else AbelianGroup()
    if kind in (GroupKind.ORTHOGONAL, GroupKind.SPECIAL_ORTHOGONAL):
        if n == 0:
            return AbelianGroup((2,)) if kind is GroupKind.ORTHOGONAL else AbelianGroup()
        if size == 2:
            return AbelianGroup((Z,)) if n == 1 else AbelianGroup()
        if n == 1:
            return AbelianGroup((2,))
        if n == 2:
            return AbelianGroup()
        return AbelianGroup((Z, Z)) if size == 4 else AbelianGroup((Z,))
    raise UnsupportedError(f"no homotopy table for {group.name}")


@dataclass(frozen=True, eq=False)
class HomotopyClass:
    """An element of pi_n(G), coefficients reduced modulo the torsion orders"""

    group: GaugeGroup
    n: int
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        table = homotopy_group(self.group, self.n)
        object.__setattr__(self, "coeffs", table.reduce(self.coeffs))

    @classmethod
    def identity(cls, group: GaugeGroup, n: int) -> "HomotopyClass":
        return cls(group, n, homotopy_group(group, n).zero())

    @classmethod
    def of(cls, group: GaugeGroup, n: int, *coeffs: int) -> "HomotopyClass":
        return cls(group, n, tuple(coeffs))

    @property
    def table(self) -> AbelianGroup:
        return homotopy_group(self.group, self.n)

    @property
    def is_identity(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "HomotopyClass") -> "HomotopyClass":
        if other.group != self.group or other.n != self.n:
            raise InputError("homotopy classes of different tables cannot be added")
        return HomotopyClass(self.group, self.n, self.table.add(self.coeffs, other.coeffs))

    def __neg__(self) -> "HomotopyClass":
        return HomotopyClass(self.group, self.n, self.table.negate(self.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomotopyClass):
            return NotImplemented
        return (self.group, self.n, self.coeffs) == (other.group, other.n, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.group, self.n, self.coeffs))

    def __repr__(self) -> str:
        return f"HomotopyClass(pi_{self.n}({self.group.name}), {list(self.coeffs)})"


def _plane_generator(size: int, i: int, j: int) -> np.ndarray:
    generator = np.zeros((size, size))
    generator[j, i] = 1.0
    generator[i, j] = -1.0
    return generator


def beta_correction(group: GaugeGroup, n: int, c: HomotopyClass) -> GroupElement:
    """
    Injective, identity-preserving map pi_n(G) -> G.

    - U(1) / SO(2), n=1: class k goes to the rotation by k radians.
    - SO(n>=3) / O(n>=3), n=1: the nontrivial class goes to the rotation by pi in
      the (e1, e2) plane.
    - pi_3 classes: k goes to exp(0.1 k X) for a fixed generator X; injective only
      for |k| < 10 pi, which covers every class used in practice. SO(4) maps its two
      coordinates to two commuting planes.
    - Z_m, n=0: the component class k is the element k itself.
    """
    if c.group != group or c.n != n:
        raise InputError(f"{c!r} does not belong to pi_{n}({group.name})")
    table = homotopy_group(group, n)
    if table.is_trivial or c.is_identity:
        return group.identity()

    if isinstance(group, CyclicGroup):
        return group.element(c.coeffs[0])
    if isinstance(group, CircleGroup):
        return group.element(float(c.coeffs[0]))
    if isinstance(group, SpecialUnitaryGroup):
        sigma_z = np.array([[1, 0], [0, -1]], dtype=complex)
        return group.element(
            np.diag(np.exp(1j * PI3_STEP * c.coeffs[0] * np.diag(sigma_z)))
        )
    if isinstance(group, OrthogonalGroup):
        size = group.spec.n
        if n == 0:
            reflection = np.eye(size)
            reflection[-1, -1] = -1.0
            return group.element(reflection)
        if n == 1 and size == 2:
            return group.exp_map(
                group.algebra_from_coords([float(c.coeffs[0])])
            )
        if n == 1:
            flip = np.eye(size)
            flip[0, 0] = flip[1, 1] = -1.0
            return group.element(flip)
        if n == 3:
            generator = PI3_STEP * c.coeffs[0] * _plane_generator(size, 0, 1)
            if size == 4:
                generator = generator + PI3_STEP * c.coeffs[1] * _plane_generator(
                    size, 2, 3
                )
            return group.element(expm(generator))
    raise UnsupportedError(f"no beta map for pi_{n}({group.name})")


def _angles(loop: Sequence[Union[GroupElement, float]]) -> List[float]:
    angles = []
    for item in loop:
        if isinstance(item, GroupElement):
            if not isinstance(item.group, CircleGroup):
                raise InputError("winding numbers need U(1) elements")
            angles.append(float(item.payload))
        else:
            angles.append(wrap_angle(float(item)))
    return angles


def winding_number(
    loop: Sequence[Union[GroupElement, float]], closed: bool = True
) -> int:
    """
    Number of turns of a loop of U(1) elements.

    With ``closed=True`` the step from the last element back to the first is
    included; otherwise the last element must repeat the first.
    """
    angles = _angles(loop)
    if not angles:
        return 0
    if closed:
        angles = angles + [angles[0]]
    elif abs(wrap_angle(angles[-1] - angles[0])) > 1e-9:
        raise InputError("an open loop description must end where it starts")
    total = 0.0
    for a, b in zip(angles, angles[1:]):
        step = wrap_angle(b - a)
        if abs(step) >= np.pi - BRANCH_CUT_MARGIN:
            raise AmbiguousGeodesicError(
                f"step of {step:.6f} rad has no unique shortest geodesic"
            )
        total += step
    return int(round(total / (2.0 * np.pi)))


def so3_loop_class(loop: Sequence[GroupElement], closed: bool = True) -> int:
    """
    Z_2 class of a loop of rotations: 0 trivial, 1 nontrivial.

    The loop is lifted step by step to unit quaternions, always choosing the lift
    nearest to the previous one; the class is nontrivial iff the lift ends at the
    negative of its start.
    """
    matrices = []
    for g in loop:
        if not isinstance(g.group, OrthogonalGroup) or g.group.spec.n != 3:
            raise InputError("loop classes are computed for SO(3) elements")
        matrices.append(np.asarray(g.payload))
    if not matrices:
        return 0
    if closed:
        matrices = matrices + [matrices[0]]
    quaternions = Rotation.from_matrix(np.array(matrices)).as_quat()
    threshold = np.cos((np.pi - BRANCH_CUT_MARGIN) / 2.0)
    lifted = quaternions[0]
    for q in quaternions[1:]:
        dot = float(np.dot(lifted, q))
        if abs(dot) <= threshold:
            raise AmbiguousGeodesicError("a loop step rotates by pi; the lift is ambiguous")
        lifted = q if dot > 0 else -q
    start = quaternions[0]
    return 0 if float(np.dot(lifted, start)) > 0 else 1
