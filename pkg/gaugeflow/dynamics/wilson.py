"""
Wilson-line superpositions and the gauge-fitness network model.

A state at X2 is parallel transported to X1 along every path of a bounded family;
the superposition is the mean of the transported states weighted by
``c^-|path| f(P v)``. The link probability X2 -> X1 compares the superposition with
the state at X1 through a shape function of their angle.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import pandas as pd

from ..config.settings import get_settings
from ..connection.connection import Connection, parallel_transport, walk_edges
from ..topology.complex import SimplicialComplex
from ..utils.errors import InputError, NoAdmissiblePathError, SingularInputError
from ..utils.helpers import atomic_write_csv, make_rng
from ..utils.logger import get_logger
from .field import DistributionSpec, MaterialField

logger = get_logger(__name__)

VertexPath = Tuple[int, ...]
ShapeFunction = Callable[[np.ndarray, np.ndarray], float]

NETWORK_COLUMNS = ["src", "dst", "probability", "sampled"]


@dataclass(frozen=True)
class PathFamily:
    """Simple paths of at most ``max_edges`` edges, weighted by ``weight_base^-edges``"""

    max_edges: int
    weight_base: float = field(default_factory=lambda: get_settings().path_weight_base)
    probability_floor: Optional[float] = None

    def __post_init__(self) -> None:
        if self.max_edges < 0:
            raise InputError("path families need a non-negative edge cutoff")
        if self.weight_base <= 1.0:
            raise InputError(f"weight base must exceed 1, got {self.weight_base}")
        if self.probability_floor is not None and self.probability_floor < 0:
            raise InputError("probability floor must be non-negative")

    def weight(self, path: Sequence[int]) -> float:
        return float(self.weight_base ** -(len(path) - 1))


def enumerate_paths(
    complex_: SimplicialComplex, x: int, y: int, max_edges: int
) -> List[VertexPath]:
    """All simple paths from x to y with at most ``max_edges`` edges, shortest first"""
    for v in (x, y):
        if (v,) not in complex_:
            raise InputError(f"vertex {v} is not in the complex")
    if x == y:
        return [(x,)]
    if max_edges < 1:
        return []
    graph = complex_.skeleton_graph()
    paths = [tuple(p) for p in nx.all_simple_paths(graph, x, y, cutoff=max_edges)]
    return sorted(paths, key=lambda p: (len(p), p))


@dataclass
class WilsonResult:
    """Superposed state at X1, or no vector when every path was cut off"""

    target: int
    source: int
    vector: Optional[np.ndarray]
    paths: List[VertexPath] = field(default_factory=list)
    weights: List[float] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return self.vector is not None

    def require(self) -> np.ndarray:
        if self.vector is None:
            raise NoAdmissiblePathError(
                f"no admissible path from {self.source} to {self.target}"
            )
        return self.vector


def wilson_superposition(
    conn: Connection,
    field: MaterialField,
    x1: int,
    x2: int,
    family: PathFamily,
    dist: DistributionSpec,
) -> WilsonResult:
    """Weighted mean of ``P_path v(X2)`` over the paths from X2 to X1"""
    group = conn.group
    start_chart = conn.chart_of((x2,))
    end_chart = conn.chart_of((x1,))
    state = field(x2)

    used: List[VertexPath] = []
    weights: List[float] = []
    images: List[np.ndarray] = []
    for path in enumerate_paths(conn.base, x2, x1, family.max_edges):
        transport = parallel_transport(
            conn, walk_edges(path), start_chart=start_chart, end_chart=end_chart
        )
        image = group.act_on_vector(transport, state)
        density = dist.density(image)
        if family.probability_floor is not None and density < family.probability_floor:
            continue
        used.append(path)
        weights.append(family.weight(path) * density)
        images.append(image)

    total = float(sum(weights))
    if not used or total <= 0.0:
        logger.debug(f"[NETWORK] No admissible path from {x2} to {x1}")
        return WilsonResult(x1, x2, None)
    vector = sum((w * v for w, v in zip(weights, images)), np.zeros(field.dim)) / total
    return WilsonResult(x1, x2, vector, used, weights)


def cosine_shape(v: Sequence[float], w: Sequence[float]) -> float:
    """``(1 + cos angle(v, w)) / 2``"""
    a = np.asarray(v, dtype=float)
    b = np.asarray(w, dtype=float)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise SingularInputError("the angle with a zero vector is undefined")
    cosine = float(np.clip(a @ b / (na * nb), -1.0, 1.0))
    return (1.0 + cosine) / 2.0


@dataclass
class GaugeFitnessModel:
    conn: Connection
    field: MaterialField
    family: PathFamily
    dist: DistributionSpec
    shape: ShapeFunction = cosine_shape


def link_probability(model: GaugeFitnessModel, x1: int, x2: int) -> float:
    """Probability of the directed link X2 -> X1; zero when no path is admissible"""
    result = wilson_superposition(model.conn, model.field, x1, x2, model.family, model.dist)
    if not result.admissible:
        return 0.0
    return float(model.shape(model.field(x1), result.require()))


@dataclass
class NetworkSample:
    graph: nx.DiGraph
    links: pd.DataFrame


def generate_network(
    model: GaugeFitnessModel, seed: Union[int, np.random.Generator, None] = None
) -> NetworkSample:
    """Draw each directed link independently with its probability"""
    rng = make_rng(seed)
    vertices = list(model.conn.base.vertices)
    graph = nx.DiGraph()
    graph.add_nodes_from(vertices)
    rows = []
    for src in vertices:
        for dst in vertices:
            if src == dst:
                continue
            probability = link_probability(model, dst, src)
            sampled = bool(rng.random() < probability)
            if sampled:
                graph.add_edge(src, dst, probability=probability)
            rows.append([src, dst, probability, sampled])
    links = pd.DataFrame(rows, columns=NETWORK_COLUMNS)
    logger.info(
        f"[NETWORK] Sampled {graph.number_of_edges()} of {len(rows)} candidate links"
    )
    return NetworkSample(graph, links)


def network_statistics(graph: nx.DiGraph) -> Dict[str, Any]:
    in_degrees = [d for _, d in graph.in_degree()]
    out_degrees = [d for _, d in graph.out_degree()]
    edges = graph.number_of_edges()
    return {
        "nodes": graph.number_of_nodes(),
        "edges": edges,
        "density": float(nx.density(graph)) if graph.number_of_nodes() > 1 else 0.0,
        "reciprocity": float(nx.reciprocity(graph)) if edges else 0.0,
        "mean_in_degree": float(np.mean(in_degrees)) if in_degrees else 0.0,
        "max_in_degree": int(max(in_degrees, default=0)),
        "mean_out_degree": float(np.mean(out_degrees)) if out_degrees else 0.0,
        "max_out_degree": int(max(out_degrees, default=0)),
    }


def write_network_csv(sample: NetworkSample, path: Union[str, Path]) -> Path:
    return atomic_write_csv(path, sample.links)
