"""Network, spin glass and evolution commands"""

import json
from pathlib import Path
from typing import Any, Dict, Optional

from ..config.experiment import EvolutionSection, IsingSection, NetworkSection, OptimizerSection
from ..config.settings import get_settings
from ..dynamics.evolution import EvolutionConfig, evolve, trajectory_frame
from ..dynamics.ising import (
    anneal_spins,
    frustrated_plaquettes,
    ground_states,
    ising_couplings_connection,
    random_couplings,
)
from ..dynamics.optimizer import OptimizerConfig
from ..dynamics.wilson import (
    GaugeFitnessModel,
    PathFamily,
    generate_network,
    network_statistics,
    write_network_csv,
)
from ..services.loaders import load_complex
from ..utils.errors import InputError
from ..utils.helpers import atomic_write_csv, atomic_write_json, make_rng
from ..utils.logger import get_logger
from .base import GaugeTool, Request, require, section
from .connection_tools import bundle_from, connection_from, field_from

logger = get_logger(__name__)


class NetGenerateTool(GaugeTool):
    """
    Sample a directed network from the gauge fitness model.

    Request: ``complex``, ``group``, optional ``structure``, ``connection``,
    ``field`` / ``field_values``, ``network`` (max_edges, weight_base,
    probability_floor) and ``seed``.
    """

    name = "net-generate"
    source = "network"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        rng = make_rng(request.get("seed"))
        bundle = bundle_from(request)
        conn = connection_from(request, bundle, rng)
        field, dist = field_from(request, bundle, rng)
        options = NetworkSection.model_validate(section(request, "network"))

        family = PathFamily(
            max_edges=options.max_edges,
            weight_base=options.weight_base or get_settings().path_weight_base,
            probability_floor=options.probability_floor,
        )
        sample = generate_network(GaugeFitnessModel(conn, field, family, dist), rng)
        stats = network_statistics(sample.graph)
        if out is not None:
            write_network_csv(sample, out / "network_links.csv")
            atomic_write_json(out / "network.json", stats)
        return {"statistics": stats, "links": json.loads(sample.links.to_json(orient="records"))}


class IsingRunTool(GaugeTool):
    """
    Frustration, ground states and annealing for a Z2 spin glass.

    Request: ``complex`` plus either ``couplings`` (``[[x, y, J], ...]``) or an
    ``ising`` section choosing uniform or random couplings.
    """

    name = "ising-run"
    source = "ising"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        complex_ = load_complex(require(request, "complex"))
        options = IsingSection.model_validate(section(request, "ising"))
        rng = make_rng(request.get("seed"))

        if request.get("couplings") is not None:
            couplings: Dict[Any, int] = {}
            for entry in request["couplings"]:
                if len(entry) != 3:
                    raise InputError(f"couplings are [x, y, J] triples, got {entry}")
                x, y, value = entry
                couplings[tuple(sorted((int(x), int(y))))] = int(value)
        elif options.mode == "random":
            couplings = dict(random_couplings(complex_, rng, options.ferromagnetic_fraction))
        else:
            sign = 1 if options.mode == "ferromagnetic" else -1
            couplings = {edge: sign for edge in complex_.simplices(1)}

        frustrated = frustrated_plaquettes(ising_couplings_connection(complex_, couplings))
        payload: Dict[str, Any] = {
            "frustrated_plaquettes": len(frustrated),
            "frustrated": [list(t) for t in frustrated],
        }
        exhaustive = len(complex_.vertices) <= get_settings().exhaustive_spin_limit
        if exhaustive:
            ground = ground_states(complex_, couplings)
            payload["ground_energy"] = ground.energy
            payload["ground_count"] = ground.count
        if options.anneal or not exhaustive:
            annealed = anneal_spins(complex_, couplings, rng)
            payload["annealed_energy"] = annealed.energy
            payload["annealed_spins"] = {str(v): s for v, s in sorted(annealed.spins.items())}
        logger.info(f"[ISING] {len(frustrated)} frustrated plaquettes")
        if out is not None:
            atomic_write_json(out / "ising.json", payload)
        return payload


class EvolveTool(GaugeTool):
    """
    Alternate connection optimization with Metropolis field updates.

    Request: ``complex``, ``group``, optional ``structure``, ``connection``,
    ``field`` / ``field_values``, ``evolution`` (steps, perturbation, resample),
    ``optimizer`` and ``seed``.
    """

    name = "evolve"
    source = "evolution"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        rng = make_rng(request.get("seed"))
        bundle = bundle_from(request)
        conn = connection_from(request, bundle, rng)
        field, dist = field_from(request, bundle, rng)
        options = EvolutionSection.model_validate(section(request, "evolution"))
        optimizer = OptimizerSection.model_validate(section(request, "optimizer"))

        config = EvolutionConfig(
            perturbation=options.perturbation,
            resample=options.resample,
            optimizer=OptimizerConfig(seed=int(rng.integers(2**31 - 1)), **optimizer.model_dump()),
            seed=int(rng.integers(2**31 - 1)),
        )
        states = evolve(field, conn, dist, options.steps, config)
        frame = trajectory_frame(states)
        if out is not None:
            atomic_write_csv(out / "evolution.csv", frame)
            atomic_write_json(out / "field_evolved.json", states[-1].field.to_dict())
        return {
            "trajectory": json.loads(frame.to_json(orient="records")),
            "field": states[-1].field.to_dict(),
        }


net_generate_tool = NetGenerateTool()
ising_run_tool = IsingRunTool()
evolve_tool = EvolveTool()
