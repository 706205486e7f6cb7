"""
Logging setup for gaugeflow
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional, TextIO

from gaugeflow.config.settings import get_settings

# Global registry of run-specific loggers
_run_loggers: Dict[str, logging.Logger] = {}

_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(log_level: Optional[str] = None, stream: TextIO = sys.stdout) -> None:
    """Setup application logging configuration"""
    settings = get_settings()
    level = log_level or settings.log_level

    console_handler = logging.StreamHandler(stream)
    console_handler.setFormatter(logging.Formatter(_FORMAT))

    logging.basicConfig(
        level=getattr(logging, level.upper()),
        handlers=[console_handler],
        format=_FORMAT,
    )


def _ensure_logs_directory() -> Path:
    """Ensure logs directory exists and return path"""
    logs_dir = Path(get_settings().log_dir)
    logs_dir.mkdir(parents=True, exist_ok=True)
    return logs_dir


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance for the given name"""
    return logging.getLogger(name)


def get_run_logger(run_id: str) -> logging.Logger:
    """Get or create a run-specific logger that writes to both console and file"""
    if run_id in _run_loggers:
        return _run_loggers[run_id]

    run_logger = logging.getLogger(f"gaugeflow.run.{run_id[:8]}")
    run_logger.setLevel(logging.INFO)

    if run_logger.handlers:
        _run_loggers[run_id] = run_logger
        return run_logger

    formatter = logging.Formatter(_FORMAT)

    # stdout is reserved for command results
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    run_logger.addHandler(console_handler)

    logs_dir = _ensure_logs_directory()
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    log_filename = f"run_{run_id[:8]}_{timestamp}.log"

    file_handler = logging.FileHandler(logs_dir / log_filename, encoding="utf-8")
    file_handler.setFormatter(formatter)
    run_logger.addHandler(file_handler)

    run_logger.info("=" * 80)
    run_logger.info("NEW EXPERIMENT RUN STARTED")
    run_logger.info(f"Run ID: {run_id}")
    run_logger.info(f"Timestamp: {datetime.now().isoformat()}")
    run_logger.info(f"Log File: {log_filename}")
    run_logger.info("=" * 80)

    _run_loggers[run_id] = run_logger
    return run_logger


def close_run_logger(run_id: str) -> None:
    """Close and cleanup run logger"""
    if run_id not in _run_loggers:
        return
    run_logger = _run_loggers.pop(run_id)

    run_logger.info("=" * 80)
    run_logger.info("EXPERIMENT RUN ENDED")
    run_logger.info(f"Run ID: {run_id}")
    run_logger.info(f"End Timestamp: {datetime.now().isoformat()}")
    run_logger.info("=" * 80)

    for handler in run_logger.handlers[:]:
        handler.close()
        run_logger.removeHandler(handler)


def list_run_logs() -> Dict[str, Path]:
    """Get all available run log files keyed by run id prefix"""
    logs_dir = _ensure_logs_directory()
    log_files = {}
    for log_file in logs_dir.glob("run_*.log"):
        parts = log_file.stem.split("_")
        if len(parts) >= 2:
            log_files[parts[1]] = log_file
    return log_files
