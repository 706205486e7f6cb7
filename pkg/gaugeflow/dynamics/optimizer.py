"""
Connection optimizers.

The search space is one group element per base edge, written in the global frame
and carried into every chart by ``Connection.from_global``. Discrete groups are
searched by enumerating or drawing elements; continuous groups move each edge by
right multiplication with exponentials of algebra elements.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Union

import numpy as np

from ..bundle.bundle import PrincipalBundle
from ..connection.connection import Connection
from ..forms.forms import GValuedForm
from ..groups.group import GroupElement
from ..topology.complex import Simplex
from ..utils.errors import InputError, UnsupportedError
from ..utils.helpers import atomic_write_jsonl, make_rng
from ..utils.logger import get_logger

logger = get_logger(__name__)

Objective = Callable[[Connection], float]
EdgeValues = Dict[Simplex, GroupElement]

# finite-difference probe in algebra coordinates
_PROBE = 1e-6


class OptimizerMethod(str, Enum):
    COORDINATE_DESCENT = "coordinate_descent"
    SIMULATED_ANNEALING = "simulated_annealing"
    FINITE_DIFFERENCE_GRADIENT = "finite_difference_gradient"


@dataclass
class OptimizerConfig:
    """Iteration caps and schedules shared by the three methods"""

    method: OptimizerMethod = OptimizerMethod.COORDINATE_DESCENT
    max_iterations: int = 100
    step: float = 0.5
    tolerance: float = 1e-9
    initial_temperature: float = 1.0
    cooling: float = 0.9
    min_temperature: float = 1e-4
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        self.method = OptimizerMethod(self.method)
        if self.max_iterations < 1:
            raise InputError("max_iterations must be positive")
        for name in ("step", "tolerance", "initial_temperature", "min_temperature"):
            if getattr(self, name) <= 0:
                raise InputError(f"{name} must be positive")
        if not 0.0 < self.cooling < 1.0:
            raise InputError("cooling ratio must lie in (0, 1)")


@dataclass
class OptimizationResult:
    """Best connection found, with the per-iteration objective trace"""

    connection: Connection
    objective: float
    iterations: int
    converged: bool
    trace: List[float] = field(default_factory=list)

    def trace_rows(self) -> List[Dict[str, Any]]:
        return [{"iter": i, "objective": value} for i, value in enumerate(self.trace)]

    def summary(self) -> Dict[str, Any]:
        return {
            "objective": self.objective,
            "iterations": self.iterations,
            "converged": self.converged,
        }


def global_form(conn: Connection) -> GValuedForm:
    """Edge values in the global frame, read from the first chart of each edge"""
    bundle = conn.bundle
    group = conn.group
    values: EdgeValues = {}
    for x, y in conn.base.simplices(1):
        root = conn.chart_of((x, y))
        values[(x, y)] = group.product(
            [bundle.frame(root, y).inv(), conn.phi(x, y, root), bundle.frame(root, x)]
        )
    return GValuedForm(1, group, values)


class _EdgeProblem:
    """Objective as a function of global edge values"""

    def __init__(self, bundle: PrincipalBundle, objective: Objective):
        self.bundle = bundle
        self.group: Any = bundle.group
        self.objective = objective
        self.edges = list(bundle.base.simplices(1))
        self.evaluations = 0

    def connection(self, values: Mapping[Simplex, GroupElement]) -> Connection:
        return Connection.from_global(self.bundle, GValuedForm(1, self.group, dict(values)))

    def __call__(self, values: Mapping[Simplex, GroupElement]) -> float:
        self.evaluations += 1
        return float(self.objective(self.connection(values)))

    def nudge(self, g: GroupElement, coords: np.ndarray) -> GroupElement:
        return self.group.multiply(g, self.group.exp_map(self.group.algebra_from_coords(coords)))


def _coordinate_descent(
    problem: _EdgeProblem, values: EdgeValues, config: OptimizerConfig
) -> OptimizationResult:
    group = problem.group
    best = problem(values)
    trace = [best]
    step = config.step
    converged = False
    iterations = 0
    dim = 0 if group.is_discrete else len(group.algebra_basis())

    for iterations in range(1, config.max_iterations + 1):
        start = best
        for edge in problem.edges:
            if group.is_discrete:
                candidates = [group.element(k) for k in range(group.order)]
            else:
                candidates = [group.identity()]
                for k in range(dim):
                    for sign in (1.0, -1.0):
                        coords = np.zeros(dim)
                        coords[k] = sign * step
                        candidates.append(problem.nudge(values[edge], coords))
            for candidate in candidates:
                trial = dict(values)
                trial[edge] = candidate
                value = problem(trial)
                if value < best:
                    best, values = value, trial
        trace.append(best)
        if start - best <= config.tolerance:
            if group.is_discrete:
                converged = True
                break
            step *= 0.5
            if step < config.tolerance:
                converged = True
                break
    return OptimizationResult(problem.connection(values), best, iterations, converged, trace)


def _simulated_annealing(
    problem: _EdgeProblem,
    values: EdgeValues,
    config: OptimizerConfig,
    rng: np.random.Generator,
) -> OptimizationResult:
    group = problem.group
    current = problem(values)
    best, best_values = current, dict(values)
    trace = [current]
    temperature = config.initial_temperature
    iterations = 0

    while iterations < config.max_iterations and temperature > config.min_temperature:
        iterations += 1
        for edge in problem.edges:
            trial = dict(values)
            if group.is_discrete:
                trial[edge] = group.random_element(rng)
            else:
                trial[edge] = group.multiply(
                    values[edge], group.exp_map(group.random_algebra(rng, config.step))
                )
            value = problem(trial)
            delta = value - current
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                values, current = trial, value
                if current < best:
                    best, best_values = current, dict(values)
        trace.append(current)
        temperature *= config.cooling

    converged = temperature <= config.min_temperature
    return OptimizationResult(problem.connection(best_values), best, iterations, converged, trace)


def _finite_difference_gradient(
    problem: _EdgeProblem, values: EdgeValues, config: OptimizerConfig
) -> OptimizationResult:
    group = problem.group
    if group.is_discrete:
        raise UnsupportedError(f"gradient steps need a continuous group, not {group.name}")
    dim = len(group.algebra_basis())
    current = problem(values)
    trace = [current]
    converged = False
    iterations = 0

    for iterations in range(1, config.max_iterations + 1):
        gradient: Dict[Simplex, np.ndarray] = {}
        for edge in problem.edges:
            slope = np.zeros(dim)
            for k in range(dim):
                probe = np.zeros(dim)
                probe[k] = _PROBE
                ahead = dict(values)
                ahead[edge] = problem.nudge(values[edge], probe)
                behind = dict(values)
                behind[edge] = problem.nudge(values[edge], -probe)
                slope[k] = (problem(ahead) - problem(behind)) / (2.0 * _PROBE)
            gradient[edge] = slope
        norm = float(np.sqrt(sum(float(g @ g) for g in gradient.values())))
        if norm < config.tolerance:
            converged = True
            trace.append(current)
            break

        rate = config.step
        moved = False
        while rate >= config.tolerance:
            trial = {e: problem.nudge(values[e], -rate * gradient[e]) for e in problem.edges}
            value = problem(trial)
            if value < current:
                values, current, moved = trial, value, True
                break
            rate *= 0.5
        trace.append(current)
        if not moved:
            converged = True
            break
    return OptimizationResult(problem.connection(values), current, iterations, converged, trace)


def optimize_connection(
    objective: Objective,
    bundle: PrincipalBundle,
    init: Optional[Connection] = None,
    config: Optional[OptimizerConfig] = None,
) -> OptimizationResult:
    """
    Minimize ``objective`` over connections of ``bundle``.

    Starts from ``init`` (the identity on every edge when omitted). Reaching the
    iteration cap before the stopping rule returns the best connection seen so far
    with ``converged`` set to False.
    """
    config = config or OptimizerConfig()
    rng = make_rng(config.seed)
    problem = _EdgeProblem(bundle, objective)
    if init is None:
        values: EdgeValues = {e: bundle.group.identity() for e in problem.edges}
    else:
        if init.bundle.base != bundle.base:
            raise InputError("initial connection lives on a different base")
        values = dict(global_form(init).values)

    logger.info(
        f"[OPTIMIZER] {config.method.value} over {len(problem.edges)} edges of {bundle.group.name}"
    )
    if config.method is OptimizerMethod.COORDINATE_DESCENT:
        result = _coordinate_descent(problem, values, config)
    elif config.method is OptimizerMethod.SIMULATED_ANNEALING:
        result = _simulated_annealing(problem, values, config, rng)
    else:
        result = _finite_difference_gradient(problem, values, config)

    status = "converged" if result.converged else "stopped at the iteration cap"
    logger.info(
        f"[OPTIMIZER] {status} after {result.iterations} iterations, "
        f"objective {result.objective:.6g} ({problem.evaluations} evaluations)"
    )
    return result


def write_trace(result: OptimizationResult, path: Union[str, Path]) -> Path:
    """JSON-lines trace, one ``{"iter", "objective"}`` row per iteration"""
    return atomic_write_jsonl(path, result.trace_rows())
