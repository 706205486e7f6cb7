"""
Command-line interface.

Every subcommand reads a JSON request from ``--input`` (or stdin), fills missing
sections from ``--config`` and prints the JSON result on stdout. Exit status is 0 on
success, 1 on a runtime failure and 2 on a usage or configuration error.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from .config.experiment import ExperimentConfig, load_experiment_config, validate_experiment
from .config.settings import get_settings
from .services.fixtures import EXPERIMENT_PRESETS, experiment_preset
from .tools import TOOLS
from .utils.errors import ConfigError, GaugeFlowError, StageError
from .utils.helpers import to_json_text
from .utils.logger import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# Config sections that tools accept as request keys
_SECTIONS = (
    "complex",
    "group",
    "bundle",
    "connection",
    "field",
    "functional",
    "optimizer",
    "network",
    "trigger",
    "evolution",
    "ising",
    "stats",
    "holonomy",
)


class UsageError(Exception):
    """Malformed command-line input"""


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="experiment config JSON supplying default sections")
    parser.add_argument("--seed", type=int, help="global seed")
    parser.add_argument("--out", help="directory for result files")
    parser.add_argument("--threads", type=int, help="worker cap for parallel evaluation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaugeflow", description="Discrete gauge theories on simplicial complexes"
    )
    parser.add_argument("--log-level", help="logging level (default from settings)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="run an experiment pipeline")
    _add_common(run_parser)
    run_parser.add_argument(
        "--preset", choices=sorted(EXPERIMENT_PRESETS), help="built-in experiment config"
    )

    for name, tool in TOOLS.items():
        doc = (tool.__doc__ or "").strip().splitlines()
        sub = subparsers.add_parser(name, help=doc[0] if doc else name)
        _add_common(sub)
        sub.add_argument("--input", help="request JSON file (default: stdin)")
        if name == "homology":
            sub.add_argument("--degree", type=int, help="single homology degree")
    return parser


def _read_request(path: Optional[str]) -> Dict[str, Any]:
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e}") from None
    elif sys.stdin is not None and not sys.stdin.isatty():
        text = sys.stdin.read()
    else:
        text = ""
    if not text.strip():
        return {}
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON request: {e}") from None
    if not isinstance(payload, dict):
        raise UsageError("the request must be a JSON object")
    return payload


def build_request(args: argparse.Namespace) -> Dict[str, Any]:
    """Request from the input, with config sections and flags filled in"""
    request = _read_request(getattr(args, "input", None))
    config: Optional[ExperimentConfig] = None
    if args.config:
        config = load_experiment_config(args.config)
        dumped = config.to_dict()
        for name in _SECTIONS:
            request.setdefault(name, dumped[name])
    if args.seed is not None:
        request["seed"] = args.seed
    elif "seed" not in request:
        seed = config.seed if config is not None else None
        request["seed"] = seed if seed is not None else get_settings().default_seed
    if args.threads is not None:
        request["threads"] = args.threads
    if getattr(args, "degree", None) is not None:
        request["k"] = args.degree
    return request


def _run_pipeline(args: argparse.Namespace) -> int:
    from .workflow.pipeline import run

    overrides = {"seed": args.seed, "threads": args.threads}
    if args.config:
        config = load_experiment_config(args.config, overrides)
    elif args.preset:
        payload = experiment_preset(args.preset)
        payload.update({k: v for k, v in overrides.items() if v is not None})
        config = validate_experiment(payload)
    else:
        raise UsageError("run needs --config or --preset")
    try:
        report = run(config, args.out)
    except StageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_FAILURE
    sys.stdout.write(to_json_text(report.to_dict()))
    return EXIT_OK


def _run_tool(args: argparse.Namespace) -> int:
    tool = TOOLS[args.command]
    response = tool(build_request(args), args.out)
    if response["success"]:
        sys.stdout.write(to_json_text(response["data"]))
        return EXIT_OK
    print(response["error"], file=sys.stderr)
    return EXIT_USAGE if response["source"] == "validation" else EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(args.log_level, stream=sys.stderr)
    try:
        if args.command == "run":
            return _run_pipeline(args)
        return _run_tool(args)
    except (UsageError, ConfigError) as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except GaugeFlowError as e:
        print(str(e), file=sys.stderr)
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {str(e)}")
        print(str(e), file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
