"""
Helper utilities for gaugeflow
"""

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Mapping, Union

import numpy as np
import pandas as pd

PathLike = Union[str, Path]


def wrap_angle(theta: float) -> float:
    """Map an angle to the principal interval (-pi, pi]"""
    wrapped = math.remainder(theta, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


def stage_rng(seed: int, stage_index: int) -> np.random.Generator:
    """
    Random generator for one pipeline stage.

    The stage index is folded into the spawn key, so adding a stage never changes
    the stream of the stages before it.
    """
    sequence = np.random.SeedSequence(seed, spawn_key=(stage_index,))
    return np.random.default_rng(sequence)


def make_rng(seed: Union[int, np.random.Generator, None]) -> np.random.Generator:
    """Accept a seed or an existing generator"""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def atomic_write_text(path: PathLike, text: str) -> Path:
    """Write text through a temporary file in the target directory"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return target


def to_json_text(payload: Any) -> str:
    """Deterministic JSON text (sorted keys, trailing newline)"""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def atomic_write_json(path: PathLike, payload: Any) -> Path:
    """Write a JSON document atomically"""
    return atomic_write_text(path, to_json_text(payload))


def atomic_write_jsonl(path: PathLike, rows: Iterable[Mapping[str, Any]]) -> Path:
    """Write JSON lines atomically"""
    text = "".join(json.dumps(dict(row), sort_keys=True) + "\n" for row in rows)
    return atomic_write_text(path, text)


def atomic_write_csv(path: PathLike, frame: pd.DataFrame) -> Path:
    """Write a data frame as CSV atomically"""
    return atomic_write_text(path, frame.to_csv(index=False))
