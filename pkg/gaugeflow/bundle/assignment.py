"""
Strategies that populate the structural data of a bundle.

- ``assign_random``: every eligible slot gets a nontrivial class with a given
  probability.
- ``assign_natural_u1`` / ``assign_natural_so3``: classes read off a section, by
  closing the two chart images of each shared edge into a loop along shortest
  geodesics.
- ``assign_cocycle_completion``: classes drawn on consecutive charts around each
  shared face and completed by sums, so that the triple rule
  ``c_ij + c_jk = c_ik`` holds on every face.
"""

import itertools
from typing import Callable, Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from ..groups.group import CircleGroup, GroupElement, OrthogonalGroup
from ..groups.homotopy import (
    HomotopyClass,
    homotopy_group,
    so3_loop_class,
    winding_number,
)
from ..topology.homology import AbelianGroup
from ..utils.errors import AmbiguousGeodesicError, InputError, UnsupportedError
from ..utils.helpers import make_rng
from ..utils.logger import get_logger
from .bundle import PrincipalBundle, Section, SlotKey, StructuralData, list_assignable_slots

logger = get_logger(__name__)

Seed = Union[int, np.random.Generator, None]


def supported_tables(bundle: PrincipalBundle, dims: Iterable[int]) -> Dict[int, AbelianGroup]:
    tables = {}
    for n in sorted(set(dims)):
        if n < 1:
            raise UnsupportedError(f"obstructions live on faces of dimension >= 1, not {n}")
        table = homotopy_group(bundle.group, n)
        if table.is_trivial:
            raise UnsupportedError(f"pi_{n}({bundle.group.name}) is trivial")
        tables[n] = table
    return tables


def nontrivial_classes(
    bundle: PrincipalBundle, n: int, table: AbelianGroup, class_range: Sequence[int]
) -> List[HomotopyClass]:
    """Distinct nontrivial classes whose coordinates are drawn from the range"""
    seen = set()
    result = []
    for coeffs in itertools.product(class_range, repeat=len(table.factors)):
        reduced = table.reduce(coeffs)
        if any(reduced) and reduced not in seen:
            seen.add(reduced)
            result.append(HomotopyClass(bundle.group, n, reduced))
    if not result:
        raise InputError(f"class range {list(class_range)} has no nontrivial class in {table}")
    return result


def _check_density(density: float) -> None:
    if not 0.0 <= density <= 1.0:
        raise InputError(f"density must lie in [0, 1], got {density}")


def assign_random(
    bundle: PrincipalBundle,
    dims: Iterable[int],
    density: float,
    class_range: Sequence[int] = (1,),
    seed: Seed = None,
) -> PrincipalBundle:
    """
    Random obstruction classes on the eligible slots.

    Slots are visited in a fixed order and each draws one uniform number, so the
    result depends only on the seed.
    """
    _check_density(density)
    tables = supported_tables(bundle, dims)
    rng = make_rng(seed)
    candidates = {n: nontrivial_classes(bundle, n, t, class_range) for n, t in tables.items()}

    structure = bundle.structure
    assigned = 0
    for slot in list_assignable_slots(bundle):
        if slot.dim not in tables:
            continue
        draw = rng.random()
        pick = int(rng.integers(len(candidates[slot.dim])))
        if draw < density:
            structure = structure.with_entry(slot, candidates[slot.dim][pick])
            assigned += 1
    logger.info(f"[BUNDLE] Random assignment filled {assigned} slots (density {density})")
    return bundle.with_structure(structure)


def assign_cocycle_completion(
    bundle: PrincipalBundle,
    dims: Iterable[int],
    density: float,
    class_range: Sequence[int] = (1,),
    seed: Seed = None,
) -> PrincipalBundle:
    """
    Random classes that compose consistently across triples of charts.

    The charts containing a face are ordered; classes are drawn on consecutive
    charts of that chain and every other pair gets the sum along the chain.
    """
    _check_density(density)
    tables = supported_tables(bundle, dims)
    rng = make_rng(seed)
    candidates = {n: nontrivial_classes(bundle, n, t, class_range) for n, t in tables.items()}

    entries: Dict[SlotKey, HomotopyClass] = dict(bundle.structure.entries)
    for n in sorted(tables):
        for face in bundle.base.simplices(n):
            chain = bundle.charts_containing(face)
            if len(chain) < 2:
                continue
            steps = []
            for _ in range(len(chain) - 1):
                draw = rng.random()
                pick = int(rng.integers(len(candidates[n])))
                if draw < density:
                    steps.append(candidates[n][pick])
                else:
                    steps.append(HomotopyClass.identity(bundle.group, n))
            for a, b in itertools.combinations(range(len(chain)), 2):
                total = HomotopyClass.identity(bundle.group, n)
                for step in steps[a:b]:
                    total = total + step
                entries[(chain[a], chain[b], face)] = total
    structure = StructuralData(bundle.group, entries, bundle.structure.corrections)
    logger.info(
        f"[BUNDLE] Cocycle completion filled {len(structure.entries)} slots over dims {sorted(tables)}"
    )
    return bundle.with_structure(structure)


def _assign_natural(
    bundle: PrincipalBundle,
    section: Section,
    classify: Callable[[List[GroupElement]], Tuple[int, ...]],
) -> PrincipalBundle:
    group = bundle.group
    entries: Dict[SlotKey, HomotopyClass] = dict(bundle.structure.entries)
    corrections: Dict[SlotKey, GroupElement] = dict(bundle.structure.corrections)
    unresolved = list(bundle.structure.unresolved)

    for slot in list_assignable_slots(bundle):
        if slot.dim != 1:
            continue
        i, j = slot.pair
        x, y = slot.face
        loop = [section(i, x), section(i, y), section(j, y), section(j, x)]
        try:
            coeffs = classify(loop)
        except AmbiguousGeodesicError as e:
            logger.warning(f"[BUNDLE] Slot {slot.key} left unassigned: {e}")
            unresolved.append((slot.key, str(e)))
            continue
        delta_x = group.multiply(section(j, x), section(i, x).inv())
        delta_y = group.multiply(section(j, y), section(i, y).inv())
        entries[slot.key] = HomotopyClass(group, 1, coeffs)
        corrections[slot.key] = group.multiply(delta_y, delta_x.inv())

    structure = StructuralData(group, entries, corrections, tuple(unresolved))
    logger.info(
        f"[BUNDLE] Natural assignment: {len(structure.entries)} nontrivial slots, "
        f"{len(unresolved)} unresolved"
    )
    return bundle.with_structure(structure)


def assign_natural_u1(bundle: PrincipalBundle, section: Section) -> PrincipalBundle:
    """Winding numbers of the section loops around each shared edge"""
    if not isinstance(bundle.group, CircleGroup):
        raise UnsupportedError(f"U(1) natural assignment on a {bundle.group.name} bundle")
    return _assign_natural(bundle, section, lambda loop: (winding_number(loop),))


def assign_natural_so3(bundle: PrincipalBundle, section: Section) -> PrincipalBundle:
    """Double-cover classes of the section loops around each shared edge"""
    group = bundle.group
    if not (isinstance(group, OrthogonalGroup) and group.special and group.spec.n == 3):
        raise UnsupportedError(f"SO(3) natural assignment on a {group.name} bundle")
    return _assign_natural(bundle, section, lambda loop: (so3_loop_class(loop),))


def assign_natural(bundle: PrincipalBundle, section: Section) -> PrincipalBundle:
    if isinstance(bundle.group, CircleGroup):
        return assign_natural_u1(bundle, section)
    return assign_natural_so3(bundle, section)
