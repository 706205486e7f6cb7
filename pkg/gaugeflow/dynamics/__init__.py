"""
Material fields, action functionals, optimizers and the models built on them
"""

from .action import (
    ActionKind,
    OrbitAverage,
    action_objective,
    holonomy_image,
    incidence_pairs,
    probability_action,
    static_action,
    weak_invariance,
)
from .evolution import EvolutionConfig, EvolutionState, evolve, trajectory_frame
from .field import DistributionSpec, MaterialField, mahalanobis, sample_field
from .ising import (
    AnnealResult,
    GroundStates,
    anneal_spins,
    frustrated_plaquettes,
    gauge_flip,
    ground_states,
    ising_couplings_connection,
    ising_energy,
    random_couplings,
    spin_connection,
    triangulated_lattice,
)
from .optimizer import (
    OptimizationResult,
    OptimizerConfig,
    OptimizerMethod,
    global_form,
    optimize_connection,
    write_trace,
)
from .trigger import ObstructionTrigger, apply_obstruction_trigger, trigger_summary
from .wilson import (
    GaugeFitnessModel,
    NetworkSample,
    PathFamily,
    WilsonResult,
    cosine_shape,
    enumerate_paths,
    generate_network,
    link_probability,
    network_statistics,
    wilson_superposition,
    write_network_csv,
)

__all__ = [
    # Fields
    "MaterialField",
    "DistributionSpec",
    "sample_field",
    "mahalanobis",
    # Functionals
    "ActionKind",
    "static_action",
    "probability_action",
    "action_objective",
    "holonomy_image",
    "incidence_pairs",
    "weak_invariance",
    "OrbitAverage",
    # Optimization and evolution
    "OptimizerConfig",
    "OptimizerMethod",
    "OptimizationResult",
    "optimize_connection",
    "global_form",
    "write_trace",
    "EvolutionConfig",
    "EvolutionState",
    "evolve",
    "trajectory_frame",
    # Wilson lines and networks
    "PathFamily",
    "WilsonResult",
    "enumerate_paths",
    "wilson_superposition",
    "cosine_shape",
    "GaugeFitnessModel",
    "NetworkSample",
    "link_probability",
    "generate_network",
    "network_statistics",
    "write_network_csv",
    # Spin glass
    "ising_couplings_connection",
    "spin_connection",
    "frustrated_plaquettes",
    "gauge_flip",
    "ising_energy",
    "ground_states",
    "GroundStates",
    "anneal_spins",
    "AnnealResult",
    "triangulated_lattice",
    "random_couplings",
    # Triggers
    "ObstructionTrigger",
    "apply_obstruction_trigger",
    "trigger_summary",
]
