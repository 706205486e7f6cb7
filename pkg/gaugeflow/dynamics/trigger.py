"""
Curvature-triggered changes of the structural data.

A triangle triggers when its scalar curvature strays from the flat value
``tr(Id)`` by more than the threshold. Each triggering triangle, with the configured
probability, raises the class of every slot of the target dimension lying inside
it: classes are ranked by the trace of their correction element (closest to the
identity first) and a slot moves one rank up.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from ..bundle.assignment import nontrivial_classes, supported_tables
from ..bundle.bundle import PrincipalBundle, list_assignable_slots
from ..connection.connection import Connection
from ..connection.curvature import scalar_curvature
from ..groups.homotopy import HomotopyClass, beta_correction
from ..utils.errors import InputError
from ..utils.helpers import make_rng
from ..utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ObstructionTrigger:
    threshold: float
    dim: int = 1
    probability: float = 1.0
    class_range: Sequence[int] = field(default=(1,))

    def __post_init__(self) -> None:
        if not 0.0 <= self.probability <= 1.0:
            raise InputError(f"trigger probability must lie in [0, 1], got {self.probability}")
        if self.threshold < 0:
            raise InputError("trigger threshold must be non-negative")


def class_ranking(bundle: PrincipalBundle, trigger: ObstructionTrigger) -> List[HomotopyClass]:
    """Nontrivial classes of the target dimension, by decreasing trace of their correction"""
    group = bundle.group
    table = supported_tables(bundle, [trigger.dim])[trigger.dim]
    candidates = nontrivial_classes(bundle, trigger.dim, table, trigger.class_range)
    return sorted(
        candidates,
        key=lambda c: (-round(group.trace(beta_correction(group, c.n, c)), 9), c.coeffs),
    )


def raised_class(ranking: Sequence[HomotopyClass], current: HomotopyClass) -> HomotopyClass:
    """Next class in the ranking; the trivial class moves to the first one"""
    if current.is_identity:
        return ranking[0]
    for index, candidate in enumerate(ranking):
        if candidate.coeffs == current.coeffs:
            return ranking[min(index + 1, len(ranking) - 1)]
    return ranking[0]


def curvature_deviation(conn: Connection, triangle: Sequence[int]) -> float:
    return abs(scalar_curvature(conn, triangle) - conn.group.rep_dim)


def apply_obstruction_trigger(
    bundle: PrincipalBundle,
    conn: Connection,
    trigger: ObstructionTrigger,
    seed: Union[int, np.random.Generator, None] = None,
) -> PrincipalBundle:
    """New bundle with raised classes under the triggering triangles"""
    if conn.base != bundle.base:
        raise InputError("connection and bundle live on different bases")
    ranking = class_ranking(bundle, trigger)
    rng = make_rng(seed)
    slots = [s for s in list_assignable_slots(bundle) if s.dim == trigger.dim]

    structure = bundle.structure
    fired: List[Any] = []
    for triangle in bundle.base.simplices(2):
        if curvature_deviation(conn, triangle) <= trigger.threshold:
            continue
        # one draw per triggering triangle
        if rng.random() >= trigger.probability:
            continue
        fired.append(triangle)
        for slot in slots:
            if set(slot.face) <= set(triangle):
                current = structure.get(*slot.pair, slot.face)
                structure = structure.with_entry(slot, raised_class(ranking, current))
    logger.info(
        f"[TRIGGER] {len(fired)} triangles triggered, dimension {trigger.dim} classes raised"
    )
    return bundle.with_structure(structure)


def trigger_summary(before: PrincipalBundle, after: PrincipalBundle) -> Dict[str, Any]:
    changed = [
        key
        for key in set(before.structure.entries) | set(after.structure.entries)
        if before.structure.entries.get(key) != after.structure.entries.get(key)
    ]
    return {"changed_slots": len(changed), "assigned_slots": len(after.structure.entries)}
