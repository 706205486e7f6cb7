"""
Stage pipeline for experiment runs
Declares every stage with the context data it needs, checks the requested plan and
executes the stages in order
"""

import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Set

from ..config.experiment import ExperimentConfig, Problem, StageName
from ..config.settings import get_settings
from ..groups.group import create_group
from ..utils.errors import ConfigError, StageError
from ..utils.helpers import atomic_write_json, stage_rng
from ..utils.logger import close_run_logger, get_logger, get_run_logger
from .stages import STAGE_HANDLERS, StageHandler
from .workflow_types import RunContext, RunReport, StageRecord, StageStatus

logger = get_logger(__name__)

REPORT_FILE = "report.json"


@dataclass
class StageDefinition:
    """A stage with the context data it consumes and produces"""

    stage: StageName
    description: str
    handler: StageHandler
    required_data: List[str] = field(default_factory=list)
    produces: List[str] = field(default_factory=list)

    @property
    def index(self) -> int:
        """Position in the canonical stage order; keys the stage's random stream"""
        return list(StageName).index(self.stage)


class StagePipeline:
    """
    Ordered experiment pipeline

    Validates a requested stage list against the data each stage needs, then runs the
    stages sequentially with one random stream per stage
    """

    def __init__(self) -> None:
        self._initialize_stages()
        self._validate_pipeline()

    def _initialize_stages(self) -> None:
        """Define every stage with its inputs and outputs"""
        specs = [
            (StageName.COMPLEX, "Build the base complex", [], ["complex"]),
            (StageName.HOMOLOGY, "Integral homology per degree", ["complex"], ["homology"]),
            (StageName.BUNDLE, "Bundle and structural data", ["complex"], ["bundle"]),
            (StageName.CLASSES, "Characteristic class verdicts", ["bundle"], ["classes"]),
            (StageName.CONNECTION, "Initial connection", ["bundle"], ["connection"]),
            (StageName.CURVATURE, "Scalar curvature map", ["connection"], []),
            (StageName.HOLONOMY, "Holonomy at a base vertex", ["connection"], []),
            (StageName.FIELD, "Material field and distribution", ["complex"], ["field", "dist"]),
            (
                StageName.OPTIMIZE,
                "Optimize the connection for the action functional",
                ["bundle", "connection", "field", "dist"],
                ["connection", "objective"],
            ),
            (
                StageName.EVOLVE,
                "Alternate connection optimization and field updates",
                ["connection", "field", "dist"],
                ["connection", "field", "objective"],
            ),
            (
                StageName.NETWORK,
                "Sample the gauge fitness network",
                ["connection", "field", "dist"],
                ["network"],
            ),
            (
                StageName.TRIGGER,
                "Curvature-triggered class changes",
                ["bundle", "connection"],
                ["bundle"],
            ),
            (StageName.ISING, "Z2 spin glass on the base", ["complex"], []),
            (StageName.STATS, "Moments and cumulants", [], []),
        ]
        self.stages: Dict[StageName, StageDefinition] = {
            name: StageDefinition(name, description, STAGE_HANDLERS[name], required, produces)
            for name, description, required, produces in specs
        }

    def _validate_pipeline(self) -> None:
        """Every stage has a handler and every required item has a producer"""
        issues = []
        produced = {item for s in self.stages.values() for item in s.produces}
        for name in StageName:
            if name not in self.stages:
                issues.append(f"stage {name.value} is not defined")
        for definition in self.stages.values():
            missing = set(definition.required_data) - produced
            if missing:
                issues.append(f"{definition.stage.value} needs {sorted(missing)} from no stage")
        if issues:
            logger.warning(f"[RUN] Pipeline validation issues: {issues}")

    def plan_problems(self, config: ExperimentConfig) -> List[Problem]:
        """Stages whose inputs are not produced by an earlier stage of the plan"""
        problems: List[Problem] = []
        available: Set[str] = set()
        for position, name in enumerate(config.stages):
            definition = self.stages[name]
            missing = [item for item in definition.required_data if item not in available]
            if missing:
                problems.append(
                    (
                        f"$.stages[{position}]",
                        f"{name.value} needs {missing} from an earlier stage",
                    )
                )
            available.update(definition.produces)
        return problems

    def execute(
        self, config: ExperimentConfig, output_dir: str, run_id: Optional[str] = None
    ) -> RunReport:
        """Run the planned stages; a failing stage stops the run with ``StageError``"""
        problems = self.plan_problems(config)
        if problems:
            raise ConfigError(problems)

        run_id = run_id or str(uuid.uuid4())
        run_logger = get_run_logger(run_id)
        seed = config.seed if config.seed is not None else get_settings().default_seed
        ctx = RunContext(config, output_dir, group=create_group(config.group.spec_dict()))
        report = RunReport(run_id, config.seed)
        Path(output_dir).mkdir(parents=True, exist_ok=True)
        run_logger.info(
            f"[RUN] Stages {[s.value for s in config.stages]} into {output_dir} (seed {seed})"
        )

        try:
            for name in config.stages:
                definition = self.stages[name]
                started = time.perf_counter()
                try:
                    outcome = definition.handler(ctx, stage_rng(seed, definition.index))
                except Exception as e:
                    elapsed = time.perf_counter() - started
                    report.stages.append(
                        StageRecord(name, StageStatus.FAILED, elapsed, error=str(e))
                    )
                    run_logger.error(f"[RUN] Stage {name.value} failed: {e}")
                    raise StageError(f"stage {name.value} failed: {e}") from e
                elapsed = time.perf_counter() - started
                report.stages.append(
                    StageRecord(
                        name, StageStatus.COMPLETED, elapsed, outcome.summary, outcome.outputs
                    )
                )
                run_logger.info(f"[RUN] Stage {name.value} completed in {elapsed:.3f}s")
                self._collect(report, name, outcome.summary, ctx)
        finally:
            atomic_write_json(Path(output_dir) / REPORT_FILE, report.to_dict())
            close_run_logger(run_id)
        return report

    @staticmethod
    def _collect(
        report: RunReport, name: StageName, summary: Dict[str, Any], ctx: RunContext
    ) -> None:
        """Lift headline results from stage summaries into the report"""
        if name in (StageName.OPTIMIZE, StageName.EVOLVE):
            report.final_objective = ctx.objective
        elif name is StageName.HOLONOMY:
            report.holonomy = summary
        elif name is StageName.CURVATURE:
            report.curvature = summary
        elif name is StageName.CLASSES:
            report.classes = ctx.classes
        elif name is StageName.NETWORK:
            report.network = ctx.network
        elif name is StageName.HOMOLOGY:
            report.homology = ctx.homology
        elif name is StageName.ISING:
            report.ising = summary


# Global pipeline instance
pipeline = StagePipeline()


def run(config: ExperimentConfig, output_dir: Optional[str] = None) -> RunReport:
    """Execute a validated config; outputs go to ``output_dir`` or the configured directory"""
    directory = output_dir or config.output.directory or get_settings().output_dir
    return pipeline.execute(config, directory)
