"""
Experiment configuration for pipeline runs.

A config is a JSON document validated by pydantic. Validation problems are
collected as ``(json_path, message)`` pairs and raised together as a
``ConfigError`` before any computation starts.
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..utils.errors import ConfigError, GaugeFlowError
from ..utils.logger import get_logger

logger = get_logger(__name__)

Problem = Tuple[str, str]


class StageName(str, Enum):
    """Pipeline stages, in their canonical order"""

    COMPLEX = "complex"
    HOMOLOGY = "homology"
    BUNDLE = "bundle"
    CLASSES = "classes"
    CONNECTION = "connection"
    CURVATURE = "curvature"
    HOLONOMY = "holonomy"
    FIELD = "field"
    OPTIMIZE = "optimize"
    EVOLVE = "evolve"
    NETWORK = "network"
    TRIGGER = "trigger"
    ISING = "ising"
    STATS = "stats"


def _existing_file(value: Optional[str]) -> Optional[str]:
    if value is not None and not Path(value).is_file():
        raise ValueError(f"file {value} does not exist")
    return value


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ComplexSection(_Section):
    """Exactly one source: a fixture name, explicit simplices, a complex JSON file or a point cloud"""

    fixture: Optional[str] = None
    simplices: Optional[List[List[int]]] = None
    path: Optional[str] = None
    points: Optional[str] = None
    radius: Optional[float] = Field(default=None, gt=0)
    max_dim: int = Field(default=2, ge=0, le=4)

    @field_validator("path", "points")
    @classmethod
    def check_files(cls, value: Optional[str]) -> Optional[str]:
        return _existing_file(value)

    def sources(self) -> List[str]:
        return [
            name
            for name in ("fixture", "simplices", "path", "points")
            if getattr(self, name) is not None
        ]


class GroupSection(_Section):
    kind: Literal["cyclic", "u1", "o", "so", "su"] = "u1"
    n: Optional[int] = Field(default=None, ge=1)
    rep_dim: Optional[int] = Field(default=None, ge=1)

    def spec_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"kind": self.kind}
        if self.n is not None:
            payload["n"] = self.n
        if self.rep_dim is not None:
            payload["rep_dim"] = self.rep_dim
        return payload


class BundleSection(_Section):
    mode: Literal["trivial", "random", "cocycle", "natural"] = "trivial"
    dims: List[int] = Field(default_factory=lambda: [1])
    density: float = Field(default=0.5, ge=0.0, le=1.0)
    class_range: List[int] = Field(default_factory=lambda: [1])


class ConnectionSection(_Section):
    init: Literal["identity", "random", "flat"] = "identity"
    scale: Optional[float] = Field(default=None, gt=0)


class FieldSection(_Section):
    """Gaussian distribution of the material field; the identity covariance by default"""

    covariance: Optional[List[List[float]]] = None
    mean: Optional[List[float]] = None


class FunctionalSection(_Section):
    kind: Literal["static", "probability"] = "static"
    orbit_samples: int = Field(default=0, ge=0)


class OptimizerSection(_Section):
    method: Literal[
        "coordinate_descent", "simulated_annealing", "finite_difference_gradient"
    ] = "coordinate_descent"
    max_iterations: int = Field(default=100, ge=1)
    step: float = Field(default=0.5, gt=0)
    tolerance: float = Field(default=1e-9, gt=0)
    initial_temperature: float = Field(default=1.0, gt=0)
    cooling: float = Field(default=0.9, gt=0, lt=1)
    min_temperature: float = Field(default=1e-4, gt=0)


class NetworkSection(_Section):
    max_edges: int = Field(default=3, ge=0)
    weight_base: Optional[float] = Field(default=None, gt=1)
    probability_floor: Optional[float] = Field(default=None, ge=0)


class TriggerSection(_Section):
    threshold: float = Field(default=0.1, ge=0)
    dim: int = Field(default=1, ge=1)
    probability: float = Field(default=1.0, ge=0, le=1)
    class_range: List[int] = Field(default_factory=lambda: [1])


class EvolutionSection(_Section):
    steps: int = Field(default=5, ge=1)
    perturbation: float = Field(default=0.1, ge=0)
    resample: bool = False


class IsingSection(_Section):
    mode: Literal["antiferromagnetic", "ferromagnetic", "random"] = "antiferromagnetic"
    ferromagnetic_fraction: float = Field(default=0.5, ge=0, le=1)
    anneal: bool = False


class StatsSection(_Section):
    """Cumulants of a samples CSV, or of draws from the field distribution"""

    samples: Optional[str] = None
    sample_count: int = Field(default=10000, ge=1)
    max_order: int = Field(default=4, ge=1, le=4)
    lie_family: Optional[str] = None
    rank: Optional[int] = Field(default=None, ge=1)

    @field_validator("samples")
    @classmethod
    def check_samples(cls, value: Optional[str]) -> Optional[str]:
        return _existing_file(value)


class HolonomySection(_Section):
    vertex: Optional[int] = None
    max_length: int = Field(default=4, ge=3)
    product_depth: Optional[int] = Field(default=None, ge=1)


class OutputSection(_Section):
    directory: Optional[str] = None
    plots: bool = True


# Stages drawing random numbers; these need a seed
STOCHASTIC_STAGES = {
    StageName.BUNDLE,
    StageName.CONNECTION,
    StageName.FIELD,
    StageName.OPTIMIZE,
    StageName.EVOLVE,
    StageName.NETWORK,
    StageName.TRIGGER,
    StageName.ISING,
    StageName.STATS,
}


class ExperimentConfig(_Section):
    """Complete description of one pipeline run"""

    complex: ComplexSection = Field(default_factory=ComplexSection)
    group: GroupSection = Field(default_factory=GroupSection)
    bundle: BundleSection = Field(default_factory=BundleSection)
    connection: ConnectionSection = Field(default_factory=ConnectionSection)
    field: FieldSection = Field(default_factory=FieldSection)
    functional: FunctionalSection = Field(default_factory=FunctionalSection)
    optimizer: OptimizerSection = Field(default_factory=OptimizerSection)
    network: NetworkSection = Field(default_factory=NetworkSection)
    trigger: TriggerSection = Field(default_factory=TriggerSection)
    evolution: EvolutionSection = Field(default_factory=EvolutionSection)
    ising: IsingSection = Field(default_factory=IsingSection)
    stats: StatsSection = Field(default_factory=StatsSection)
    holonomy: HolonomySection = Field(default_factory=HolonomySection)
    output: OutputSection = Field(default_factory=OutputSection)
    stages: List[StageName] = Field(
        default_factory=lambda: [StageName.COMPLEX, StageName.HOMOLOGY]
    )
    seed: Optional[int] = Field(default=None, ge=0)
    threads: Optional[int] = Field(default=None, ge=1)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


def json_path(loc: Tuple[Union[int, str], ...]) -> str:
    """``("stages", 2)`` -> ``$.stages[2]``"""
    path = "$"
    for part in loc:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def _validation_problems(error: ValidationError) -> List[Problem]:
    return [(json_path(tuple(e["loc"])), e["msg"]) for e in error.errors()]


def consistency_problems(config: ExperimentConfig) -> List[Problem]:
    """Cross-section checks the field validators cannot see"""
    from ..groups.group import create_group

    problems: List[Problem] = []
    sources = config.complex.sources()
    if len(sources) != 1:
        problems.append(
            ("$.complex", f"exactly one complex source is required, got {sources or 'none'}")
        )
    if config.complex.fixture is not None:
        from ..services.fixtures import FIXTURE_COMPLEXES

        if config.complex.fixture not in FIXTURE_COMPLEXES:
            problems.append(("$.complex.fixture", f"unknown fixture {config.complex.fixture}"))
    if config.complex.points is not None and config.complex.radius is None:
        problems.append(("$.complex.radius", "a point cloud needs a radius"))
    if len(config.stages) != len(set(config.stages)):
        problems.append(("$.stages", "every stage may be listed only once"))

    try:
        rep_dim: Optional[int] = create_group(config.group.spec_dict()).rep_dim
    except GaugeFlowError as e:
        problems.append(("$.group", str(e)))
        rep_dim = None

    covariance = config.field.covariance
    if covariance is not None:
        if any(len(row) != len(covariance) for row in covariance):
            problems.append(("$.field.covariance", "covariance must be a square matrix"))
        elif rep_dim is not None and len(covariance) != rep_dim:
            problems.append(
                (
                    "$.field.covariance",
                    f"dimension {len(covariance)} does not match the representation ({rep_dim})",
                )
            )
    mean = config.field.mean
    if mean is not None and rep_dim is not None and len(mean) != rep_dim:
        problems.append(
            ("$.field.mean", f"length {len(mean)} does not match the representation ({rep_dim})")
        )

    if config.bundle.mode == "natural" and config.group.kind not in ("u1", "so"):
        problems.append(("$.bundle.mode", "natural assignment supports u1 and so(3) only"))
    if config.stats.lie_family is not None:
        from ..stats.invariants import LieFamily

        if config.stats.lie_family not in {f.value for f in LieFamily}:
            problems.append(("$.stats.lie_family", f"unknown family {config.stats.lie_family}"))

    stochastic = [s.value for s in config.stages if s in STOCHASTIC_STAGES]
    if stochastic and config.seed is None:
        problems.append(("$.seed", f"a seed is required by the stages {stochastic}"))
    return problems


def validate_experiment(payload: Mapping[str, Any]) -> ExperimentConfig:
    """Parse and check a config document, raising ``ConfigError`` with every problem"""
    try:
        config = ExperimentConfig.model_validate(dict(payload))
    except ValidationError as e:
        raise ConfigError(_validation_problems(e)) from None
    problems = consistency_problems(config)
    if problems:
        raise ConfigError(problems)
    return config


def load_experiment_config(
    path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None
) -> ExperimentConfig:
    """Read a JSON config file; top-level ``overrides`` (e.g. seed) win over the file"""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError([("$", f"config file {path} does not exist")]) from None
    except json.JSONDecodeError as e:
        raise ConfigError([("$", f"malformed JSON: {e}")]) from None
    if not isinstance(payload, dict):
        raise ConfigError([("$", "a config must be a JSON object")])
    payload.update({k: v for k, v in (overrides or {}).items() if v is not None})
    config = validate_experiment(payload)
    logger.info(f"[RUN] Loaded config {path} with stages {[s.value for s in config.stages]}")
    return config
