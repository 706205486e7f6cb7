"""
Action functionals of a connection against a material field.

Both functionals sum over (vertex, incident triangle) pairs and compare the field at
the vertex with its image under the curvature based there:

- the static action adds up Mahalanobis distances ``d(v(X), R|_X v(X))``;
- the probability action adds up densities ``f(R|_X v(X))``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config.settings import get_settings
from ..connection.connection import Connection, gauge_transform_connection
from ..connection.curvature import curvature
from ..forms.forms import GValuedForm
from ..topology.complex import Simplex
from ..utils.errors import InputError
from ..utils.helpers import make_rng
from ..utils.logger import get_logger
from .field import DistributionSpec, MaterialField, mahalanobis

logger = get_logger(__name__)

Seed = Union[int, np.random.Generator, None]
Objective = Callable[[Connection], float]


class ActionKind(Enum):
    """Functional to optimize"""

    STATIC = "static"
    PROBABILITY = "probability"


def incidence_pairs(conn: Connection) -> List[Tuple[int, Simplex]]:
    """Every (vertex, triangle containing it), in a fixed order"""
    return [(v, t) for t in conn.base.simplices(2) for v in t]


def holonomy_image(
    conn: Connection, field: MaterialField, vertex: int, triangle: Sequence[int]
) -> np.ndarray:
    """``R|_X v(X)`` for the triangle rotated to start at X"""
    return conn.group.act_on_vector(curvature(conn, triangle, base=vertex), field(vertex))


def _evaluate(
    conn: Connection,
    term: Callable[[Tuple[int, Simplex]], float],
    threads: Optional[int],
) -> float:
    pairs = incidence_pairs(conn)
    workers = max(1, threads if threads is not None else get_settings().max_threads)
    if workers == 1 or len(pairs) < 2:
        values = [term(pair) for pair in pairs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(term, pairs))
    # fixed summation order keeps results independent of the schedule
    return float(sum(values, 0.0))


def _check_field(conn: Connection, field: MaterialField) -> None:
    if not field.covers(conn.base):
        raise InputError("the material field does not cover every vertex of the base")
    if field.dim != conn.group.rep_dim:
        raise InputError(
            f"field dimension {field.dim} does not match the representation ({conn.group.rep_dim})"
        )


def static_action(
    conn: Connection,
    field: MaterialField,
    covariance: Optional[np.ndarray] = None,
    threads: Optional[int] = None,
) -> float:
    _check_field(conn, field)

    def term(pair: Tuple[int, Simplex]) -> float:
        vertex, triangle = pair
        return mahalanobis(
            field(vertex), holonomy_image(conn, field, vertex, triangle), covariance
        )

    return _evaluate(conn, term, threads)


def probability_action(
    conn: Connection,
    field: MaterialField,
    dist: DistributionSpec,
    threads: Optional[int] = None,
) -> float:
    _check_field(conn, field)

    def term(pair: Tuple[int, Simplex]) -> float:
        vertex, triangle = pair
        return dist.density(holonomy_image(conn, field, vertex, triangle))

    return _evaluate(conn, term, threads)


def action_objective(
    kind: ActionKind,
    field: MaterialField,
    dist: DistributionSpec,
    threads: Optional[int] = None,
) -> Objective:
    """Objective to minimize: the static action, or the negated probability action"""
    if kind is ActionKind.STATIC:
        return lambda conn: static_action(conn, field, dist.covariance, threads)
    return lambda conn: -probability_action(conn, field, dist, threads)


@dataclass
class OrbitAverage:
    """Probability action averaged over random gauge transforms of the connection"""

    mean: float
    spread: float
    values: List[float]


def weak_invariance(
    conn: Connection,
    field: MaterialField,
    dist: DistributionSpec,
    samples: int = 16,
    seed: Seed = None,
) -> OrbitAverage:
    """
    Mean and standard deviation of the probability action over the gauge orbit.

    The field stays fixed while the connection moves along its orbit, so the spread
    measures how far the functional is from gauge invariant.
    """
    if samples < 1:
        raise InputError("weak invariance needs at least one gauge sample")
    rng = make_rng(seed)
    values = []
    for _ in range(samples):
        gauge = GValuedForm.random(conn.base, 0, conn.group, rng)
        values.append(probability_action(gauge_transform_connection(conn, gauge), field, dist))
    mean = float(np.mean(values))
    spread = float(np.std(values))
    logger.info(f"[EVOLVE] Orbit average {mean:.6g} with spread {spread:.3g} over {samples} gauges")
    return OrbitAverage(mean, spread, values)
