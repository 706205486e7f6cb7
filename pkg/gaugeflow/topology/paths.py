"""
The group of k-paths and its boundary realizations.

A k-path is a freely reduced word of oriented k-simplices. Its boundary is only
defined up to the order of the faces of each simplex: every even reordering of the
vertices of a simplex gives another realization, so a single k-simplex has
(k+1)!/2 of them. Cycle detection therefore searches the realization space.

The search runs in two stages, both bounded by one explored-state budget:

1. Strict stage: enumerate realizations (canonical first, then lexicographic in the
   per-simplex realization indices) and look for one that freely reduces to the empty
   word.
2. Fusion stage: the per-simplex boundary blocks are kept in order; two adjacent
   blocks that contain an inverse pair merge into their net sum, and adjacent blocks
   with disjoint supports commute. Reaching no blocks at all certifies the path.

The abelianized boundary is checked first, which is the only sound way of answering
``NO``; an unsuccessful search answers ``UNKNOWN``.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from ..config.settings import get_settings
from ..utils.errors import InputError
from ..utils.logger import get_logger
from .complex import OrientedSimplex, Simplex, boundary_faces, permutation_sign

logger = get_logger(__name__)

Block = Tuple[Tuple[Simplex, int], ...]


class SearchVerdict(Enum):
    """Three-valued answer of a budgeted search"""

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class WitnessStatus(Enum):
    FOUND = "found"
    BUDGET_EXHAUSTED = "budget_exhausted"
    NOT_FOUND = "not_found"


def free_reduce(word: Sequence[OrientedSimplex]) -> Tuple[OrientedSimplex, ...]:
    """Cancel adjacent inverse pairs until none is left"""
    stack: List[OrientedSimplex] = []
    for simplex in word:
        if stack and stack[-1] == simplex.reversed():
            stack.pop()
        else:
            stack.append(simplex)
    return tuple(stack)


@dataclass(frozen=True)
class KPath:
    """Freely reduced word of oriented k-simplices; the empty word is the identity"""

    word: Tuple[OrientedSimplex, ...] = ()

    def __post_init__(self) -> None:
        dims = {s.dim for s in self.word}
        if len(dims) > 1:
            raise InputError(f"k-path mixes simplex dimensions {sorted(dims)}")
        object.__setattr__(self, "word", free_reduce(self.word))

    @classmethod
    def of(cls, *orderings: Sequence[int]) -> "KPath":
        """Build from vertex orderings, e.g. ``KPath.of((0, 1), (1, 2))``"""
        return cls(tuple(OrientedSimplex.from_vertices(o) for o in orderings))

    @property
    def dim(self) -> Optional[int]:
        return self.word[0].dim if self.word else None

    @property
    def is_empty(self) -> bool:
        return not self.word

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[OrientedSimplex]:
        return iter(self.word)

    def __str__(self) -> str:
        return "".join(str(s) for s in self.word) if self.word else "()"


def compose(p: KPath, q: KPath) -> KPath:
    """Concatenate and freely reduce"""
    if p.dim is not None and q.dim is not None and p.dim != q.dim:
        raise InputError(f"cannot compose a {p.dim}-path with a {q.dim}-path")
    return KPath(p.word + q.word)


def inverse(p: KPath) -> KPath:
    return KPath(tuple(s.reversed() for s in reversed(p.word)))


@dataclass(frozen=True)
class BoundaryRealization:
    """A (k-1)-path obtained from the boundary faces of a k-path"""

    word: KPath
    source: KPath
    choice: Tuple[int, ...] = ()


def _even_orderings(vertices: Sequence[int]) -> List[Tuple[int, ...]]:
    """Even reorderings of ``vertices``: identity first, then lexicographic"""
    base = tuple(vertices)
    size = len(base)
    orderings = [base]
    for perm in itertools.permutations(range(size)):
        if perm == tuple(range(size)):
            continue
        if permutation_sign(perm) == 1:
            orderings.append(tuple(base[i] for i in perm))
    return orderings


def simplex_realizations(simplex: OrientedSimplex) -> List[Tuple[OrientedSimplex, ...]]:
    """All boundary words of one simplex, canonical first"""
    if simplex.dim < 1:
        raise InputError("boundary realizations need a simplex of dimension >= 1")
    return [tuple(boundary_faces(o)) for o in _even_orderings(simplex.vertices)]


def boundary_realizations(simplex: OrientedSimplex) -> Iterator[BoundaryRealization]:
    """Realizations of the boundary of a single simplex"""
    source = KPath((simplex,))
    for index, faces in enumerate(simplex_realizations(simplex)):
        yield BoundaryRealization(KPath(faces), source, (index,))


def path_boundary_realizations(p: KPath) -> Iterator[BoundaryRealization]:
    """Realizations of a whole path; order between source simplices is preserved"""
    if p.is_empty:
        yield BoundaryRealization(KPath(), p, ())
        return
    options = [simplex_realizations(s) for s in p.word]
    for choice in itertools.product(*(range(len(o)) for o in options)):
        faces: Tuple[OrientedSimplex, ...] = ()
        for position, index in enumerate(choice):
            faces += options[position][index]
        yield BoundaryRealization(KPath(faces), p, choice)


def chain_boundary(p: KPath) -> Dict[Simplex, int]:
    """Abelianized boundary as an integer chain (zero coefficients dropped)"""
    chain: Dict[Simplex, int] = {}
    for simplex in p.word:
        for face in simplex.faces():
            chain[face.key] = chain.get(face.key, 0) + face.orientation
    return {key: value for key, value in sorted(chain.items()) if value}


def _block(faces: Sequence[OrientedSimplex]) -> Block:
    net: Dict[Simplex, int] = {}
    for face in faces:
        net[face.key] = net.get(face.key, 0) + face.orientation
    return tuple(sorted((k, v) for k, v in net.items() if v))


def _merge(first: Block, second: Block) -> Block:
    net = dict(first)
    for key, value in second:
        net[key] = net.get(key, 0) + value
    return tuple(sorted((k, v) for k, v in net.items() if v))


def _has_inverse_pair(first: Block, second: Block) -> bool:
    lookup = dict(first)
    return any(key in lookup and lookup[key] * value < 0 for key, value in second)


def _disjoint(first: Block, second: Block) -> bool:
    keys = {key for key, _ in first}
    return not any(key in keys for key, _ in second)


@dataclass
class FusionOutcome:
    success: bool
    merges: int
    explored: int
    exhausted: bool


def fuse_blocks(blocks: Sequence[Block], budget: int) -> FusionOutcome:
    """Depth-first search over block merges and commutations"""
    start = tuple(b for b in blocks if b)
    visited: Set[Tuple[Block, ...]] = set()
    stack: List[Tuple[Tuple[Block, ...], int]] = [(start, 0)]
    explored = 0
    while stack:
        state, merges = stack.pop()
        if not state:
            return FusionOutcome(True, merges, explored, False)
        if state in visited:
            continue
        visited.add(state)
        explored += 1
        if explored >= budget:
            return FusionOutcome(False, 0, explored, True)
        swaps = []
        fusions = []
        for i in range(len(state) - 1):
            left, right = state[i], state[i + 1]
            if _has_inverse_pair(left, right):
                merged = _merge(left, right)
                successor = state[:i] + ((merged,) if merged else ()) + state[i + 2 :]
                fusions.append((successor, merges + 1))
            elif _disjoint(left, right) and left != right:
                successor = state[:i] + (right, left) + state[i + 2 :]
                swaps.append((successor, merges))
        # stack is LIFO: push swaps first so fusions are tried first
        stack.extend(reversed(swaps))
        stack.extend(reversed(fusions))
    return FusionOutcome(False, 0, explored, False)


@dataclass
class CycleSearch:
    """Outcome of a cycle search with its provenance"""

    verdict: SearchVerdict
    explored: int
    stage: str
    choice: Optional[Tuple[int, ...]] = None
    fusion_steps: int = 0


def search_cycle(p: KPath, budget: Optional[int] = None) -> CycleSearch:
    """Budgeted search for an empty boundary realization of ``p``"""
    budget = budget if budget is not None else get_settings().search_budget
    if p.is_empty:
        return CycleSearch(SearchVerdict.YES, 0, "trivial", ())
    if p.dim == 0:
        # 0-simplices have no boundary faces
        return CycleSearch(SearchVerdict.YES, 0, "trivial", ())
    if chain_boundary(p):
        logger.debug(f"[PATHS] {p} has nonzero abelianized boundary")
        return CycleSearch(SearchVerdict.NO, 0, "abelian")

    strict_budget = max(1, budget // 2)
    explored = 0
    for realization in path_boundary_realizations(p):
        explored += 1
        if realization.word.is_empty:
            return CycleSearch(SearchVerdict.YES, explored, "strict", realization.choice)
        if explored >= strict_budget:
            break

    blocks = [_block(simplex_realizations(s)[0]) for s in p.word]
    outcome = fuse_blocks(blocks, max(1, budget - explored))
    explored += outcome.explored
    if outcome.success:
        return CycleSearch(
            SearchVerdict.YES, explored, "fusion", fusion_steps=outcome.merges
        )
    logger.info(f"[PATHS] Cycle search for {p} undecided after {explored} states")
    return CycleSearch(SearchVerdict.UNKNOWN, explored, "fusion")


def is_cycle(p: KPath, budget: Optional[int] = None) -> SearchVerdict:
    return search_cycle(p, budget).verdict


@dataclass
class DDWitness:
    """Realization choices whose double boundary reduces to the empty word"""

    status: WitnessStatus
    level_k: Tuple[int, ...] = ()
    level_k_minus_1: Tuple[int, ...] = ()
    fusion_steps: int = 0
    explored: int = 0
    intermediate: KPath = field(default_factory=KPath)

    @property
    def found(self) -> bool:
        return self.status is WitnessStatus.FOUND


def dd_empty_witness(p: KPath, budget: Optional[int] = None) -> DDWitness:
    """
    Find realization choices at levels k and k-1 with an empty double boundary.

    Every level-k realization is tried with the strict level-(k-1) search first;
    only when none of them reduces strictly does the fusion stage run.
    """
    if p.dim is None or p.dim < 2:
        raise InputError("a double-boundary witness needs a k-path with k >= 2")
    budget = budget if budget is not None else get_settings().search_budget

    explored = 0
    level_k_choices: List[BoundaryRealization] = []
    for upper in path_boundary_realizations(p):
        level_k_choices.append(upper)
        if upper.word.is_empty:
            return DDWitness(
                WitnessStatus.FOUND, upper.choice, (), 0, explored, upper.word
            )
        for lower in path_boundary_realizations(upper.word):
            explored += 1
            if lower.word.is_empty:
                logger.debug(f"[PATHS] Strict dd witness for {p} after {explored}")
                return DDWitness(
                    WitnessStatus.FOUND,
                    upper.choice,
                    lower.choice,
                    0,
                    explored,
                    upper.word,
                )
            if explored >= budget // 2:
                break
        if explored >= budget // 2:
            break

    for upper in level_k_choices:
        blocks = [_block(simplex_realizations(s)[0]) for s in upper.word.word]
        outcome = fuse_blocks(blocks, max(1, budget - explored))
        explored += outcome.explored
        if outcome.success:
            return DDWitness(
                WitnessStatus.FOUND,
                upper.choice,
                tuple(0 for _ in upper.word.word),
                outcome.merges,
                explored,
                upper.word,
            )
        if explored >= budget:
            logger.warning(f"[PATHS] dd witness search for {p} ran out of budget")
            return DDWitness(WitnessStatus.BUDGET_EXHAUSTED, explored=explored)
    return DDWitness(WitnessStatus.NOT_FOUND, explored=explored)
