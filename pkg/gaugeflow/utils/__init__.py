"""
Utilities package for gaugeflow
"""

from .errors import (
    AmbiguousGeodesicError,
    ConfigError,
    GaugeFlowError,
    InputError,
    NoAdmissiblePathError,
    SingularInputError,
    StageError,
    UnsupportedError,
)
from .helpers import (
    atomic_write_csv,
    atomic_write_json,
    atomic_write_jsonl,
    make_rng,
    stage_rng,
    wrap_angle,
)
from .logger import get_logger, get_run_logger, setup_logging

__all__ = [
    # Logging
    "get_logger",
    "get_run_logger",
    "setup_logging",
    # Errors
    "GaugeFlowError",
    "InputError",
    "SingularInputError",
    "AmbiguousGeodesicError",
    "UnsupportedError",
    "NoAdmissiblePathError",
    "StageError",
    "ConfigError",
    # Helpers
    "wrap_angle",
    "stage_rng",
    "make_rng",
    "atomic_write_json",
    "atomic_write_jsonl",
    "atomic_write_csv",
]
