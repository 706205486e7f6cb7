"""Connection optimization, holonomy and curvature commands"""

import json
from pathlib import Path
from typing import Any, Optional, Tuple

import numpy as np

from ..bundle.bundle import PrincipalBundle, Section
from ..config.experiment import (
    ConnectionSection,
    FieldSection,
    FunctionalSection,
    HolonomySection,
    OptimizerSection,
)
from ..connection.connection import (
    Connection,
    flat_connection,
    holonomy_set,
    random_connection,
)
from ..connection.curvature import curvature_map
from ..dynamics.action import ActionKind, action_objective
from ..dynamics.field import DistributionSpec, MaterialField, sample_field
from ..dynamics.optimizer import OptimizerConfig, optimize_connection, write_trace
from ..services.loaders import (
    distribution_from,
    load_bundle,
    load_complex,
    load_connection,
    load_field,
    load_group,
)
from ..utils.helpers import atomic_write_csv, atomic_write_json, make_rng
from ..utils.logger import get_logger
from .base import GaugeTool, Request, require, section

logger = get_logger(__name__)


def bundle_from(request: Request) -> PrincipalBundle:
    complex_ = load_complex(require(request, "complex"))
    group = load_group(section(request, "group"))
    return load_bundle(complex_, group, request.get("structure"))


def connection_from(
    request: Request, bundle: PrincipalBundle, rng: np.random.Generator
) -> Connection:
    """Connection JSON (with ``charts``) or a connection section (``init``, ``scale``)"""
    payload = section(request, "connection")
    if "charts" in payload:
        return load_connection(payload, bundle)
    options = ConnectionSection.model_validate(payload)
    if options.init == "random":
        return random_connection(bundle, rng, options.scale)
    if options.init == "flat":
        return flat_connection(bundle, Section.random(bundle, rng))
    return flat_connection(bundle)


def field_from(
    request: Request, bundle: PrincipalBundle, rng: np.random.Generator
) -> Tuple[MaterialField, DistributionSpec]:
    """Material field from ``field_values``, or sampled from the ``field`` distribution"""
    dist = distribution_from(
        FieldSection.model_validate(section(request, "field")), bundle.group.rep_dim
    )
    if request.get("field_values"):
        return load_field(request["field_values"]), dist
    return sample_field(dist, bundle.base, rng), dist


class ConnOptimizeTool(GaugeTool):
    """
    Minimize the static or negated probability action over connections.

    Request: ``complex``, ``group``, optional ``structure``, ``connection`` (initial),
    ``field`` / ``field_values``, ``functional``, ``optimizer``, ``seed``, ``threads``.
    """

    name = "conn-optimize"
    source = "optimizer"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        rng = make_rng(request.get("seed"))
        bundle = bundle_from(request)
        init = connection_from(request, bundle, rng)
        field, dist = field_from(request, bundle, rng)
        functional = FunctionalSection.model_validate(section(request, "functional"))
        options = OptimizerSection.model_validate(section(request, "optimizer"))

        objective = action_objective(
            ActionKind(functional.kind), field, dist, request.get("threads")
        )
        config = OptimizerConfig(seed=int(rng.integers(2**31 - 1)), **options.model_dump())
        result = optimize_connection(objective, bundle, init, config)

        payload = {
            **result.summary(),
            "functional": functional.kind,
            "trace": result.trace_rows(),
            "connection": result.connection.to_dict(),
        }
        if out is not None:
            atomic_write_json(out / "connection_optimized.json", payload["connection"])
            write_trace(result, out / "optimizer_trace.jsonl")
        return payload


class ConnHolonomyTool(GaugeTool):
    """
    Holonomy elements at a vertex.

    Request: ``complex``, ``group``, optional ``structure``, ``connection`` and
    ``holonomy`` (vertex, max_length, product_depth).
    """

    name = "conn-holonomy"
    source = "connection"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        rng = make_rng(request.get("seed"))
        bundle = bundle_from(request)
        conn = connection_from(request, bundle, rng)
        options = HolonomySection.model_validate(section(request, "holonomy"))
        vertex = options.vertex if options.vertex is not None else bundle.base.vertices[0]

        holonomy = holonomy_set(conn, vertex, options.max_length, options.product_depth)
        payload = holonomy.summary()
        payload["elements"] = [conn.group.to_json(g) for g in holonomy.elements]
        if out is not None:
            atomic_write_json(out / "holonomy.json", payload)
        return payload


class CurvatureMapTool(GaugeTool):
    """
    Scalar curvature per triangle; a flat connection gives the representation
    dimension everywhere.
    """

    name = "curvature-map"
    source = "connection"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        rng = make_rng(request.get("seed"))
        bundle = bundle_from(request)
        conn = connection_from(request, bundle, rng)
        frame = curvature_map(conn, request.get("threads"))
        if out is not None:
            atomic_write_csv(out / "curvature.csv", frame)
        return {
            "flat_trace": float(conn.group.rep_dim),
            "rows": json.loads(frame.to_json(orient="records")),
        }


conn_optimize_tool = ConnOptimizeTool()
conn_holonomy_tool = ConnHolonomyTool()
curvature_map_tool = CurvatureMapTool()
