"""
Joint evolution of the material field and the gauge field.

Each step re-optimizes the connection for the current field, then moves every
vertex state by one Metropolis step on the probability functional. Time is the
step index; the base itself is not extended.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..connection.connection import Connection
from ..utils.errors import InputError
from ..utils.helpers import make_rng
from ..utils.logger import get_logger
from .action import ActionKind, action_objective, holonomy_image, probability_action
from .field import DistributionSpec, MaterialField
from .optimizer import OptimizerConfig, optimize_connection

logger = get_logger(__name__)


@dataclass
class EvolutionConfig:
    perturbation: float = 0.1
    resample: bool = False
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        if self.perturbation < 0:
            raise InputError("perturbation scale must be non-negative")


@dataclass
class EvolutionState:
    step: int
    field: MaterialField
    connection: Connection
    objective: float
    accepted: int = 0

    def summary(self) -> Dict[str, Any]:
        return {"step": self.step, "objective": self.objective, "accepted": self.accepted}


def vertex_weight(
    conn: Connection, field: MaterialField, dist: DistributionSpec, vertex: int
) -> float:
    """Density of the curvature images at one vertex, or of the state itself off triangles"""
    triangles = conn.base.incident(vertex, 2)
    if not triangles:
        return dist.density(field(vertex))
    return float(
        sum(dist.density(holonomy_image(conn, field, vertex, t)) for t in triangles)
    )


def metropolis_sweep(
    conn: Connection,
    field: MaterialField,
    dist: DistributionSpec,
    config: EvolutionConfig,
    rng: np.random.Generator,
) -> Tuple[MaterialField, int]:
    """
    One Metropolis-Hastings pass over the vertices.

    Random-walk proposals are symmetric. Resampled proposals are independent draws
    from ``dist``, so the ratio carries the factor ``q(current) / q(proposal)``.
    """
    accepted = 0
    for vertex in field.vertices:
        current = field(vertex)
        if config.resample:
            proposal = dist.sample(rng)
        else:
            proposal = current + config.perturbation * rng.normal(size=field.dim)
        draw = rng.random()
        before = vertex_weight(conn, field, dist, vertex)
        moved = field.with_value(vertex, proposal)
        after = vertex_weight(conn, moved, dist, vertex)
        if config.resample:
            before *= dist.density(proposal)
            after *= dist.density(current)
        if before <= 0.0 or draw < min(1.0, after / before):
            field = moved
            accepted += 1
    return field, accepted


def evolve(
    field: MaterialField,
    conn: Connection,
    dist: DistributionSpec,
    steps: int,
    config: Optional[EvolutionConfig] = None,
) -> List[EvolutionState]:
    """Trajectory of ``steps`` updates, preceded by the initial state"""
    if steps < 1:
        raise InputError("evolution needs at least one step")
    config = config or EvolutionConfig()
    rng = make_rng(config.seed)
    states = [EvolutionState(0, field, conn, probability_action(conn, field, dist))]

    for step in range(1, steps + 1):
        objective = action_objective(ActionKind.PROBABILITY, field, dist)
        conn = optimize_connection(objective, conn.bundle, conn, config.optimizer).connection
        field, accepted = metropolis_sweep(conn, field, dist, config, rng)
        value = probability_action(conn, field, dist)
        states.append(EvolutionState(step, field, conn, value, accepted))
        logger.debug(f"[EVOLVE] Step {step}: objective {value:.6g}, {accepted} moves accepted")

    logger.info(f"[EVOLVE] Finished {steps} steps, final objective {states[-1].objective:.6g}")
    return states


def trajectory_frame(states: List[EvolutionState]) -> pd.DataFrame:
    """Plot data: one row per step"""
    return pd.DataFrame([s.summary() for s in states], columns=["step", "objective", "accepted"])
