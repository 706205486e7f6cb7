"""Bundle assignment and characteristic class commands"""

from pathlib import Path
from typing import Any, Optional

from ..bundle.assignment import assign_cocycle_completion, assign_natural, assign_random
from ..bundle.bundle import Section, characteristic_classes, is_strictly_trivial
from ..config.experiment import BundleSection
from ..services.loaders import load_bundle, load_complex, load_group
from ..utils.helpers import atomic_write_json, make_rng
from ..utils.logger import get_logger
from .base import GaugeTool, Request, require, section

logger = get_logger(__name__)


class BundleAssignTool(GaugeTool):
    """
    Structural data for a trivial starting bundle.

    Request: ``complex``, ``group``, ``bundle`` (mode, dims, density, class_range) and
    ``seed``. Returns the structural data JSON.
    """

    name = "bundle-assign"
    source = "bundle"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        complex_ = load_complex(require(request, "complex"))
        group = load_group(section(request, "group"))
        options = BundleSection.model_validate(section(request, "bundle"))
        rng = make_rng(request.get("seed"))

        bundle = load_bundle(complex_, group, None)
        if options.mode == "random":
            bundle = assign_random(bundle, options.dims, options.density, options.class_range, rng)
        elif options.mode == "cocycle":
            bundle = assign_cocycle_completion(
                bundle, options.dims, options.density, options.class_range, rng
            )
        elif options.mode == "natural":
            bundle = assign_natural(bundle, Section.random(bundle, rng))

        payload = bundle.structure.to_dict()
        logger.info(
            f"[BUNDLE] {options.mode} assignment: {len(payload['slots'])} slots, "
            f"strictly trivial {is_strictly_trivial(bundle)}"
        )
        if out is not None:
            atomic_write_json(out / "bundle.json", payload)
        return payload


class BundleClassesTool(GaugeTool):
    """
    Characteristic class verdicts per degree.

    Request: ``complex``, ``group`` and optional ``structure`` (structural data JSON).
    """

    name = "bundle-classes"
    source = "bundle"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        complex_ = load_complex(require(request, "complex"))
        group = load_group(section(request, "group"))
        bundle = load_bundle(complex_, group, request.get("structure"))
        verdicts = {str(n): v.value for n, v in characteristic_classes(bundle).items()}
        payload = {"classes": verdicts, "strictly_trivial": is_strictly_trivial(bundle)}
        if out is not None:
            atomic_write_json(out / "classes.json", payload)
        return payload


bundle_assign_tool = BundleAssignTool()
bundle_classes_tool = BundleClassesTool()
