"""Cumulant estimation command"""

from pathlib import Path
from typing import Any, Optional

import numpy as np

from ..config.experiment import StatsSection
from ..stats.invariants import degrees_table
from ..stats.moments import cumulants, empirical_cumulants, max_abs_by_order, raw_moments
from ..utils.errors import InputError
from ..utils.helpers import atomic_write_json
from ..utils.logger import get_logger
from .base import GaugeTool, Request, section

logger = get_logger(__name__)


class StatsCumulantsTool(GaugeTool):
    """
    Cumulants up to order four.

    Request: ``samples`` (CSV path) or ``data`` (list of sample rows), plus
    ``max_order`` and optionally ``lie_family`` / ``rank`` for the degrees table.
    """

    name = "stats-cumulants"
    source = "stats"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        data = request.get("data")
        flat = {k: v for k, v in request.items() if k in StatsSection.model_fields}
        options = StatsSection.model_validate({**section(request, "stats"), **flat})
        if options.samples is not None:
            table = empirical_cumulants(options.samples, options.max_order)
        elif data is not None:
            table = cumulants(raw_moments(np.asarray(data, dtype=float), options.max_order))
        else:
            raise InputError("give 'samples' (a CSV path) or 'data' (sample rows)")

        payload = {
            "cumulants": table.to_dict(),
            "max_abs_by_order": max_abs_by_order(table),
        }
        if options.lie_family is not None:
            payload["degrees"] = degrees_table(options.lie_family, options.rank).to_dict()
        if out is not None:
            atomic_write_json(out / "cumulants.json", payload["cumulants"])
        return payload


stats_cumulants_tool = StatsCumulantsTool()
