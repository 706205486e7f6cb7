"""
Workflow package: experiment pipeline and run reports
"""

from .pipeline import REPORT_FILE, StageDefinition, StagePipeline, pipeline, run
from .stages import STAGE_HANDLERS, StageOutcome
from .workflow_types import RunContext, RunReport, StageRecord, StageStatus

__all__ = [
    # Pipeline
    "StagePipeline",
    "StageDefinition",
    "pipeline",
    "run",
    "REPORT_FILE",
    # Stages
    "STAGE_HANDLERS",
    "StageOutcome",
    # Types
    "RunContext",
    "RunReport",
    "StageRecord",
    "StageStatus",
]
