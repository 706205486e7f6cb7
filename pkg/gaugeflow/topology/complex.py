"""
Simplicial complexes with orientation conventions and faced-simplex covers.

A simplex is stored unoriented as the ascending tuple of its vertex ids; that tuple
is also its reference orientation. Oriented simplices carry an explicit +1/-1 sign
relative to the reference ordering, which covers 0-simplices as well (the boundary
of an edge contains the reversed point).

Example:
    ```python
    complex_ = from_maximal_simplices(4, [[0, 1, 2], [1, 2, 3]])
    faced_simplices(complex_)          # [(0 1 2), (1 2 3)]
    common_faces(*faced_simplices(complex_), complex_)
    ```
"""

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import pandas as pd
from scipy.spatial.distance import pdist, squareform

from ..utils.errors import InputError
from ..utils.logger import get_logger

logger = get_logger(__name__)

Simplex = Tuple[int, ...]


def permutation_sign(sequence: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``sequence`` (+1 even, -1 odd)"""
    inversions = 0
    items = list(sequence)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def orientation_equal(first: Sequence[int], second: Sequence[int]) -> bool:
    """True iff two vertex orderings describe the same oriented simplex"""
    if sorted(first) != sorted(second):
        return False
    return permutation_sign(first) == permutation_sign(second)


@dataclass(frozen=True, order=True)
class OrientedSimplex:
    """An unoriented simplex key plus an orientation sign"""

    key: Simplex
    orientation: int = 1

    def __post_init__(self) -> None:
        if not self.key:
            raise InputError("a simplex needs at least one vertex")
        if any(a >= b for a, b in zip(self.key, self.key[1:])):
            raise InputError(f"simplex key must be strictly ascending: {self.key}")
        if self.orientation not in (1, -1):
            raise InputError(f"orientation must be +1 or -1, got {self.orientation}")

    @classmethod
    def from_vertices(cls, vertices: Sequence[int]) -> "OrientedSimplex":
        ids = [int(v) for v in vertices]
        if len(set(ids)) != len(ids):
            raise InputError(f"repeated vertex in simplex {ids}")
        return cls(tuple(sorted(ids)), permutation_sign(ids))

    @property
    def dim(self) -> int:
        return len(self.key) - 1

    @property
    def vertices(self) -> Simplex:
        """An ordering realizing this orientation"""
        if self.orientation == 1 or self.dim == 0:
            return self.key
        return (self.key[1], self.key[0]) + self.key[2:]

    def reversed(self) -> "OrientedSimplex":
        return OrientedSimplex(self.key, -self.orientation)

    def ordered_from(self, first: int) -> Simplex:
        """Ordering that starts at ``first`` and keeps this orientation"""
        if first not in self.key:
            raise InputError(f"vertex {first} is not in simplex {self.key}")
        rest = [v for v in self.key if v != first]
        candidate = (first, *rest)
        if permutation_sign(candidate) == self.orientation or self.dim == 0:
            return candidate
        if len(rest) < 2:
            raise InputError(
                f"no ordering of {self} starts at {first} with this orientation"
            )
        rest[-1], rest[-2] = rest[-2], rest[-1]
        return (first, *rest)

    def faces(self) -> List["OrientedSimplex"]:
        """Faces in boundary order: the i-th omits vertex i, odd i reversed"""
        return boundary_faces(self.vertices)

    def __str__(self) -> str:
        body = " ".join(str(v) for v in self.vertices)
        if self.dim == 0 and self.orientation == -1:
            return f"({body})~"
        return f"({body})"


def boundary_faces(ordering: Sequence[int]) -> List[OrientedSimplex]:
    """Induced oriented faces of an ordered simplex, in boundary order"""
    if len(ordering) < 2:
        return []
    faces = []
    for i in range(len(ordering)):
        face = OrientedSimplex.from_vertices(
            [v for position, v in enumerate(ordering) if position != i]
        )
        faces.append(face.reversed() if i % 2 else face)
    return faces


@dataclass(frozen=True)
class PointCloud:
    """Points with integer ids and real coordinates of a common dimension"""

    ids: Tuple[int, ...]
    coords: np.ndarray

    def __post_init__(self) -> None:
        coords = np.asarray(self.coords, dtype=float)
        if coords.ndim == 1:
            coords = coords.reshape(len(self.ids), -1) if self.ids else coords.reshape(0, 0)
        if coords.shape[0] != len(self.ids):
            raise InputError("one coordinate row is needed per point id")
        if not np.all(np.isfinite(coords)):
            raise InputError("point cloud coordinates must be finite")
        if len(set(self.ids)) != len(self.ids) or any(i < 0 for i in self.ids):
            raise InputError("point ids must be unique non-negative integers")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_array(
        cls, coords: Sequence[Sequence[float]], ids: Optional[Sequence[int]] = None
    ) -> "PointCloud":
        array = np.asarray(coords, dtype=float)
        if array.size == 0:
            return cls((), np.zeros((0, 0)))
        point_ids = tuple(range(len(array))) if ids is None else tuple(ids)
        return cls(point_ids, array)

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "PointCloud":
        """Read a ``id,x0,x1,...`` CSV file"""
        frame = pd.read_csv(path)
        if "id" not in frame.columns:
            raise InputError(f"point cloud CSV {path} has no 'id' column")
        coordinate_columns = [c for c in frame.columns if c != "id"]
        return cls(
            tuple(int(i) for i in frame["id"]),
            frame[coordinate_columns].to_numpy(dtype=float),
        )

    def __len__(self) -> int:
        return len(self.ids)


class SimplicialComplex:
    """
    Face-closed set of simplices.

    Instances are immutable after construction and safe to share.
    """

    def __init__(
        self,
        simplices: Iterable[Sequence[int]],
        vertices: Optional[Iterable[int]] = None,
    ) -> None:
        closure = set()
        for simplex in simplices:
            key = tuple(sorted(int(v) for v in simplex))
            if not key:
                raise InputError("empty simplex in complex definition")
            if len(set(key)) != len(key):
                raise InputError(f"repeated vertex in simplex {list(simplex)}")
            if any(v < 0 for v in key):
                raise InputError(f"vertex ids must be non-negative: {list(simplex)}")
            if key in closure:
                continue
            for size in range(1, len(key) + 1):
                closure.update(itertools.combinations(key, size))
        for vertex in vertices or ():
            closure.add((int(vertex),))

        by_dim: Dict[int, List[Simplex]] = {}
        for key in closure:
            by_dim.setdefault(len(key) - 1, []).append(key)
        self._by_dim: Dict[int, Tuple[Simplex, ...]] = {
            dim: tuple(sorted(keys)) for dim, keys in sorted(by_dim.items())
        }
        self._members = frozenset(closure)
        self._index: Dict[Simplex, int] = {}
        for keys in self._by_dim.values():
            self._index.update({key: position for position, key in enumerate(keys)})
        self._faced = self._compute_faced()

    def _compute_faced(self) -> Tuple[Simplex, ...]:
        covered = set()
        for key in self._members:
            for size in range(1, len(key)):
                covered.update(itertools.combinations(key, size))
        return tuple(sorted(k for k in self._members if k not in covered))

    # Queries

    @property
    def dimension(self) -> int:
        return max(self._by_dim) if self._by_dim else -1

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(key[0] for key in self._by_dim.get(0, ()))

    def simplices(self, dim: int) -> Tuple[Simplex, ...]:
        return self._by_dim.get(dim, ())

    def count(self, dim: int) -> int:
        return len(self._by_dim.get(dim, ()))

    def all_simplices(self) -> Iterator[Simplex]:
        for keys in self._by_dim.values():
            yield from keys

    def __contains__(self, simplex: Sequence[int]) -> bool:
        return tuple(sorted(simplex)) in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        counts = ", ".join(f"{d}:{len(k)}" for d, k in self._by_dim.items())
        return f"SimplicialComplex({counts})"

    def index(self, simplex: Sequence[int]) -> int:
        key = tuple(sorted(simplex))
        if key not in self._members:
            raise InputError(f"simplex {key} is not in the complex")
        return self._index[key]

    def faced(self) -> Tuple[Simplex, ...]:
        return self._faced

    def is_faced(self, simplex: Sequence[int]) -> bool:
        return tuple(sorted(simplex)) in set(self._faced)

    def cofaces(self, simplex: Sequence[int]) -> List[Simplex]:
        """Simplices of one dimension higher that contain ``simplex``"""
        key = set(simplex)
        dim = len(key)
        return [s for s in self.simplices(dim) if key.issubset(s)]

    def incident(self, vertex: int, dim: int) -> List[Simplex]:
        """Simplices of dimension ``dim`` containing ``vertex``"""
        return [s for s in self.simplices(dim) if vertex in s]

    def is_face_closed(self) -> bool:
        for key in self._members:
            for size in range(1, len(key)):
                for face in itertools.combinations(key, size):
                    if face not in self._members:
                        return False
        return True

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._members.issubset(other._members)

    def euler_characteristic(self) -> int:
        return sum((-1) ** dim * len(keys) for dim, keys in self._by_dim.items())

    def skeleton_graph(self) -> nx.Graph:
        """The 1-skeleton as an undirected networkx graph"""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.simplices(1))
        return graph

    # Serialization

    def to_dict(self) -> Dict[str, Any]:
        vertex_count = max(self.vertices) + 1 if self.vertices else 0
        return {
            "vertex_count": vertex_count,
            "maximal_simplices": [list(key) for key in self._faced],
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "SimplicialComplex":
        if "maximal_simplices" not in payload:
            raise InputError("complex JSON needs a 'maximal_simplices' list")
        return from_maximal_simplices(
            int(payload.get("vertex_count", 0)), payload["maximal_simplices"]
        )


def from_maximal_simplices(
    vertex_count: int, maximal: Sequence[Sequence[int]]
) -> SimplicialComplex:
    """Face closure of ``maximal`` on the vertex set ``0 .. vertex_count-1``"""
    if vertex_count < 0:
        raise InputError("vertex_count must be non-negative")
    for simplex in maximal:
        if not simplex:
            raise InputError("maximal simplex lists must be non-empty")
        if len(set(simplex)) != len(simplex):
            raise InputError(f"duplicate vertex in {list(simplex)}")
        for vertex in simplex:
            if not 0 <= int(vertex) < vertex_count:
                raise InputError(
                    f"vertex id {vertex} out of range for vertex_count={vertex_count}"
                )
    complex_ = SimplicialComplex(maximal, vertices=range(vertex_count))
    logger.debug(f"[COMPLEX] Built {complex_!r} from {len(maximal)} simplices")
    return complex_


def build_vietoris_rips_from_distances(
    distances: np.ndarray, ids: Sequence[int], radius: float, max_dim: int
) -> SimplicialComplex:
    """Vietoris-Rips complex of a precomputed symmetric distance matrix"""
    if radius <= 0:
        raise InputError("radius must be positive")
    if max_dim < 0:
        raise InputError("max_dim must be non-negative")
    matrix = np.asarray(distances, dtype=float)
    if len(ids) == 0:
        return SimplicialComplex([])
    if matrix.shape != (len(ids), len(ids)):
        raise InputError("distance matrix shape does not match the id list")
    if not np.all(np.isfinite(matrix)):
        raise InputError("distances must be finite")

    graph = nx.Graph()
    graph.add_nodes_from(int(i) for i in ids)
    rows, cols = np.nonzero(np.triu(matrix <= radius, k=1))
    graph.add_edges_from((int(ids[r]), int(ids[c])) for r, c in zip(rows, cols))

    simplices: List[Simplex] = []
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) > max_dim + 1:
            break
        simplices.append(tuple(sorted(clique)))
    complex_ = SimplicialComplex(simplices, vertices=ids)
    logger.info(
        f"[COMPLEX] Vietoris-Rips radius={radius} max_dim={max_dim}: {complex_!r}"
    )
    return complex_


def build_vietoris_rips(
    cloud: PointCloud, radius: float, max_dim: int
) -> SimplicialComplex:
    """Vietoris-Rips complex with Euclidean distances"""
    if len(cloud) == 0:
        if radius <= 0:
            raise InputError("radius must be positive")
        return SimplicialComplex([])
    distances = squareform(pdist(cloud.coords)) if len(cloud) > 1 else np.zeros((1, 1))
    return build_vietoris_rips_from_distances(distances, cloud.ids, radius, max_dim)


def faced_simplices(complex_: SimplicialComplex) -> List[OrientedSimplex]:
    """Maximal simplices with their reference orientation, sorted by vertex ids"""
    return [OrientedSimplex(key) for key in complex_.faced()]


def common_faces(
    first: OrientedSimplex, second: OrientedSimplex, complex_: SimplicialComplex
) -> List[Tuple[OrientedSimplex, int]]:
    """All shared faces of two simplices, ordered by dimension then vertex ids"""
    for simplex in (first, second):
        if simplex.key not in complex_:
            raise InputError(f"simplex {simplex} is not in the complex")
    shared = sorted(set(first.key) & set(second.key))
    faces = []
    for size in range(1, len(shared) + 1):
        for key in itertools.combinations(shared, size):
            faces.append((OrientedSimplex(key), size - 1))
    return faces
