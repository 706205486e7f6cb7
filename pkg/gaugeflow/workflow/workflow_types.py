"""Shared types and enums for pipeline runs"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from ..config.experiment import ExperimentConfig, StageName
from ..topology.complex import SimplicialComplex


class StageStatus(Enum):
    """Outcome of one pipeline stage"""

    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class StageRecord:
    """What one stage did: its summary, timing and outputs"""

    name: StageName
    status: StageStatus
    seconds: float
    summary: Dict[str, Any] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name.value,
            "status": self.status.value,
            "seconds": self.seconds,
            "summary": self.summary,
            "outputs": self.outputs,
            "error": self.error,
        }


@dataclass
class RunContext:
    """Objects handed from stage to stage during a run"""

    config: ExperimentConfig
    output_dir: str
    group: Any = None
    complex: Optional[SimplicialComplex] = None
    homology: Optional[List[Dict[str, Any]]] = None
    bundle: Any = None
    classes: Optional[Dict[str, str]] = None
    connection: Any = None
    field: Any = None
    dist: Any = None
    objective: Optional[float] = None
    network: Optional[Dict[str, Any]] = None

    def has(self, name: str) -> bool:
        return getattr(self, name, None) is not None


@dataclass
class RunReport:
    """Per-stage records plus the headline results of a run"""

    run_id: str
    seed: Optional[int]
    stages: List[StageRecord] = field(default_factory=list)
    final_objective: Optional[float] = None
    holonomy: Optional[Dict[str, Any]] = None
    curvature: Optional[Dict[str, Any]] = None
    classes: Optional[Dict[str, str]] = None
    network: Optional[Dict[str, Any]] = None
    homology: Optional[List[Dict[str, Any]]] = None
    ising: Optional[Dict[str, Any]] = None

    @property
    def succeeded(self) -> bool:
        return all(s.status is StageStatus.COMPLETED for s in self.stages)

    def record(self, name: StageName) -> Optional[StageRecord]:
        return next((s for s in self.stages if s.name is name), None)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for storage"""
        return {
            "run_id": self.run_id,
            "seed": self.seed,
            "succeeded": self.succeeded,
            "stages": [s.to_dict() for s in self.stages],
            "final_objective": self.final_objective,
            "holonomy": self.holonomy,
            "curvature": self.curvature,
            "classes": self.classes,
            "network": self.network,
            "homology": self.homology,
            "ising": self.ising,
        }
