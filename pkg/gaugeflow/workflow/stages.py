"""
Stage handlers for pipeline runs.

Each handler reads what earlier stages left in the ``RunContext``, writes its result
files atomically into the output directory and returns a JSON-compatible summary.
Result files carry no timings, so seeded runs reproduce them byte for byte.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List

import numpy as np

from ..bundle.assignment import assign_cocycle_completion, assign_natural, assign_random
from ..bundle.bundle import Section, characteristic_classes, is_strictly_trivial, trivial_bundle
from ..config.experiment import OptimizerSection, StageName
from ..config.settings import get_settings
from ..connection.connection import flat_connection, holonomy_set, random_connection
from ..connection.curvature import curvature_map, is_flat
from ..dynamics.action import ActionKind, action_objective, weak_invariance
from ..dynamics.evolution import EvolutionConfig, evolve, trajectory_frame
from ..dynamics.field import DistributionSpec, sample_field
from ..dynamics.ising import (
    anneal_spins,
    frustrated_plaquettes,
    ground_states,
    ising_couplings_connection,
    random_couplings,
)
from ..dynamics.optimizer import OptimizerConfig, optimize_connection, write_trace
from ..dynamics.trigger import ObstructionTrigger, apply_obstruction_trigger, trigger_summary
from ..dynamics.wilson import (
    GaugeFitnessModel,
    PathFamily,
    generate_network,
    network_statistics,
    write_network_csv,
)
from ..services.loaders import build_complex, distribution_from
from ..stats.invariants import degrees_table
from ..stats.moments import cumulants, empirical_cumulants, max_abs_by_order, raw_moments
from ..topology.homology import simplicial_homology
from ..utils.helpers import atomic_write_csv, atomic_write_json
from ..utils.logger import get_logger
from .workflow_types import RunContext

logger = get_logger(__name__)


@dataclass
class StageOutcome:
    summary: Dict[str, Any] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)


StageHandler = Callable[[RunContext, np.random.Generator], StageOutcome]


def _write_json(ctx: RunContext, outcome: StageOutcome, name: str, payload: Any) -> None:
    atomic_write_json(Path(ctx.output_dir) / name, payload)
    outcome.outputs.append(name)


def _write_csv(ctx: RunContext, outcome: StageOutcome, name: str, frame: Any) -> None:
    atomic_write_csv(Path(ctx.output_dir) / name, frame)
    outcome.outputs.append(name)


def _sub_seed(rng: np.random.Generator) -> int:
    """Integer seed for components that take one, drawn from the stage stream"""
    return int(rng.integers(2**31 - 1))


def _optimizer_config(section: OptimizerSection, seed: int) -> OptimizerConfig:
    return OptimizerConfig(seed=seed, **section.model_dump())


# Topology


def run_complex(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    complex_ = build_complex(ctx.config.complex)
    ctx.complex = complex_

    outcome = StageOutcome(
        {
            "vertices": len(complex_.vertices),
            "dimension": complex_.dimension,
            "counts": [complex_.count(k) for k in range(complex_.dimension + 1)],
            "euler_characteristic": complex_.euler_characteristic(),
        }
    )
    _write_json(ctx, outcome, "complex.json", complex_.to_dict())
    return outcome


def run_homology(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    assert ctx.complex is not None
    descriptors = [
        simplicial_homology(ctx.complex, k).to_dict(k)
        for k in range(ctx.complex.dimension + 1)
    ]
    ctx.homology = descriptors
    outcome = StageOutcome({"homology": descriptors})
    _write_json(ctx, outcome, "homology.json", descriptors)
    return outcome


# Bundles and connections


def run_bundle(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    assert ctx.complex is not None
    section = ctx.config.bundle
    bundle = trivial_bundle(ctx.complex, ctx.group)
    if section.mode == "random":
        bundle = assign_random(bundle, section.dims, section.density, section.class_range, rng)
    elif section.mode == "cocycle":
        bundle = assign_cocycle_completion(
            bundle, section.dims, section.density, section.class_range, rng
        )
    elif section.mode == "natural":
        bundle = assign_natural(bundle, Section.random(bundle, rng))
    ctx.bundle = bundle

    outcome = StageOutcome(
        {
            "mode": section.mode,
            "charts": len(bundle.charts),
            "assigned_slots": len(bundle.structure.entries),
            "strictly_trivial": is_strictly_trivial(bundle),
        }
    )
    _write_json(ctx, outcome, "bundle.json", bundle.structure.to_dict())
    return outcome


def run_classes(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    verdicts = {str(n): v.value for n, v in characteristic_classes(ctx.bundle).items()}
    ctx.classes = verdicts
    outcome = StageOutcome({"classes": verdicts})
    _write_json(ctx, outcome, "classes.json", verdicts)
    return outcome


def run_connection(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    section = ctx.config.connection
    if section.init == "random":
        conn = random_connection(ctx.bundle, rng, section.scale)
    elif section.init == "flat":
        conn = flat_connection(ctx.bundle, Section.random(ctx.bundle, rng))
    else:
        conn = flat_connection(ctx.bundle)
    ctx.connection = conn
    outcome = StageOutcome(
        {"init": section.init, "transition_residual": conn.transition_residual()}
    )
    _write_json(ctx, outcome, "connection.json", conn.to_dict())
    return outcome


def run_curvature(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    conn = ctx.connection
    frame = curvature_map(conn, ctx.config.threads)
    values = frame["scalar_curvature"]
    outcome = StageOutcome(
        {
            "triangles": int(len(frame)),
            "flat_trace": float(conn.group.rep_dim),
            "min_scalar": float(values.min()) if len(frame) else None,
            "max_scalar": float(values.max()) if len(frame) else None,
            "flat": is_flat(conn),
        }
    )
    _write_csv(ctx, outcome, "curvature.csv", frame)
    return outcome


def run_holonomy(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    section = ctx.config.holonomy
    conn = ctx.connection
    vertex = section.vertex if section.vertex is not None else conn.base.vertices[0]
    holonomy = holonomy_set(conn, vertex, section.max_length, section.product_depth)
    summary = holonomy.summary()
    summary["elements"] = [conn.group.to_json(g) for g in holonomy.elements]
    outcome = StageOutcome(holonomy.summary())
    _write_json(ctx, outcome, "holonomy.json", summary)
    return outcome


# Fields and functionals


def run_field(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    assert ctx.complex is not None
    dist = distribution_from(ctx.config.field, ctx.group.rep_dim)
    ctx.dist = dist
    ctx.field = sample_field(dist, ctx.complex, rng)

    outcome = StageOutcome({"dim": dist.dim, "vertices": len(ctx.field.vertices)})
    _write_json(
        ctx, outcome, "field.json", {"distribution": dist.to_dict(), "field": ctx.field.to_dict()}
    )
    return outcome


def run_optimize(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    section = ctx.config.functional
    objective = action_objective(
        ActionKind(section.kind), ctx.field, ctx.dist, ctx.config.threads
    )
    config = _optimizer_config(ctx.config.optimizer, _sub_seed(rng))
    result = optimize_connection(objective, ctx.bundle, ctx.connection, config)
    ctx.connection = result.connection
    ctx.objective = result.objective

    outcome = StageOutcome({"functional": section.kind, **result.summary()})
    if section.orbit_samples:
        orbit = weak_invariance(
            result.connection, ctx.field, ctx.dist, section.orbit_samples, _sub_seed(rng)
        )
        outcome.summary["orbit_mean"] = orbit.mean
        outcome.summary["orbit_spread"] = orbit.spread
    _write_json(ctx, outcome, "connection_optimized.json", result.connection.to_dict())
    if ctx.config.output.plots:
        write_trace(result, Path(ctx.output_dir) / "optimizer_trace.jsonl")
        outcome.outputs.append("optimizer_trace.jsonl")
    return outcome


def run_evolve(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    section = ctx.config.evolution
    config = EvolutionConfig(
        perturbation=section.perturbation,
        resample=section.resample,
        optimizer=_optimizer_config(ctx.config.optimizer, _sub_seed(rng)),
        seed=_sub_seed(rng),
    )
    states = evolve(ctx.field, ctx.connection, ctx.dist, section.steps, config)
    final = states[-1]
    ctx.field = final.field
    ctx.connection = final.connection
    ctx.objective = -final.objective

    outcome = StageOutcome(
        {
            "steps": section.steps,
            "initial_probability_action": states[0].objective,
            "final_probability_action": final.objective,
            "accepted_moves": int(sum(s.accepted for s in states)),
        }
    )
    _write_csv(ctx, outcome, "evolution.csv", trajectory_frame(states))
    _write_json(ctx, outcome, "field_evolved.json", final.field.to_dict())
    return outcome


# Models


def run_network(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    section = ctx.config.network
    family = PathFamily(
        max_edges=section.max_edges,
        weight_base=section.weight_base or get_settings().path_weight_base,
        probability_floor=section.probability_floor,
    )
    model = GaugeFitnessModel(ctx.connection, ctx.field, family, ctx.dist)
    sample = generate_network(model, rng)
    stats = network_statistics(sample.graph)
    ctx.network = stats

    outcome = StageOutcome(stats)
    write_network_csv(sample, Path(ctx.output_dir) / "network_links.csv")
    outcome.outputs.append("network_links.csv")
    _write_json(ctx, outcome, "network.json", stats)
    return outcome


def run_trigger(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    section = ctx.config.trigger
    trigger = ObstructionTrigger(
        section.threshold, section.dim, section.probability, tuple(section.class_range)
    )
    before = ctx.bundle
    after = apply_obstruction_trigger(before, ctx.connection, trigger, rng)
    ctx.bundle = after
    outcome = StageOutcome(trigger_summary(before, after))
    _write_json(ctx, outcome, "bundle_triggered.json", after.structure.to_dict())
    return outcome


def run_ising(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    assert ctx.complex is not None
    section = ctx.config.ising
    edges = ctx.complex.simplices(1)
    if section.mode == "random":
        couplings = random_couplings(ctx.complex, rng, section.ferromagnetic_fraction)
    else:
        sign = 1 if section.mode == "ferromagnetic" else -1
        couplings = {edge: sign for edge in edges}
    conn = ising_couplings_connection(ctx.complex, couplings)
    frustrated = frustrated_plaquettes(conn)

    summary: Dict[str, Any] = {
        "mode": section.mode,
        "frustrated_plaquettes": len(frustrated),
        "spins": len(ctx.complex.vertices),
    }
    exhaustive = len(ctx.complex.vertices) <= get_settings().exhaustive_spin_limit
    if exhaustive:
        ground = ground_states(ctx.complex, couplings)
        summary["ground_energy"] = ground.energy
        summary["ground_count"] = ground.count
    if section.anneal or not exhaustive:
        annealed = anneal_spins(ctx.complex, couplings, rng)
        summary["annealed_energy"] = annealed.energy

    outcome = StageOutcome(summary)
    _write_json(
        ctx,
        outcome,
        "ising.json",
        {
            **summary,
            "couplings": [[x, y, couplings[(x, y)]] for x, y in edges],
            "frustrated": [list(t) for t in frustrated],
        },
    )
    return outcome


def run_stats(ctx: RunContext, rng: np.random.Generator) -> StageOutcome:
    section = ctx.config.stats
    if section.samples is not None:
        table = empirical_cumulants(section.samples, section.max_order)
        source = "file"
    else:
        dist = ctx.dist or DistributionSpec.standard(ctx.group.rep_dim)
        draws = dist.sample(rng, size=section.sample_count)
        table = cumulants(raw_moments(np.atleast_2d(draws), section.max_order))
        source = "distribution"

    summary: Dict[str, Any] = {"source": source, "max_abs_by_order": max_abs_by_order(table)}
    if section.lie_family is not None:
        summary["degrees"] = degrees_table(section.lie_family, section.rank).to_dict()
    outcome = StageOutcome(summary)
    _write_json(ctx, outcome, "cumulants.json", table.to_dict())
    return outcome


STAGE_HANDLERS: Dict[StageName, StageHandler] = {
    StageName.COMPLEX: run_complex,
    StageName.HOMOLOGY: run_homology,
    StageName.BUNDLE: run_bundle,
    StageName.CLASSES: run_classes,
    StageName.CONNECTION: run_connection,
    StageName.CURVATURE: run_curvature,
    StageName.HOLONOMY: run_holonomy,
    StageName.FIELD: run_field,
    StageName.OPTIMIZE: run_optimize,
    StageName.EVOLVE: run_evolve,
    StageName.NETWORK: run_network,
    StageName.TRIGGER: run_trigger,
    StageName.ISING: run_ising,
    StageName.STATS: run_stats,
}
