"""Complex construction and homology commands"""

from pathlib import Path
from typing import Any, Optional

from ..services.loaders import load_complex
from ..topology.homology import betti_numbers, simplicial_homology
from ..utils.errors import InputError
from ..utils.helpers import atomic_write_json
from ..utils.logger import get_logger
from .base import GaugeTool, Request, complex_payload, require

logger = get_logger(__name__)


class ComplexBuildTool(GaugeTool):
    """
    Build a complex from a fixture name, explicit simplices, a complex JSON file or a
    point cloud. Request: ``{"complex": {...}}`` or the section itself.
    """

    name = "complex-build"
    source = "topology"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        complex_ = load_complex(complex_payload(request))
        payload = complex_.to_dict()
        logger.info(
            f"[COMPLEX] Built complex with {len(complex_.vertices)} vertices, "
            f"dimension {complex_.dimension}"
        )
        if out is not None:
            atomic_write_json(out / "complex.json", payload)
        return payload


class HomologyTool(GaugeTool):
    """
    Integral homology of a complex JSON. With ``"k"`` the single descriptor
    ``{"k", "rank", "torsion"}`` is returned, otherwise one per degree.
    """

    name = "homology"
    source = "topology"

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        complex_ = load_complex(complex_payload(request))
        if "k" in request:
            k = int(require(request, "k"))
            if k < 0:
                raise InputError("homology degree must be non-negative")
            result: Any = simplicial_homology(complex_, k).to_dict(k)
        else:
            result = [
                simplicial_homology(complex_, k).to_dict(k)
                for k in range(complex_.dimension + 1)
            ]
            logger.info(f"[HOMOLOGY] Betti numbers {betti_numbers(complex_)}")
        if out is not None:
            atomic_write_json(out / "homology.json", result)
        return result


complex_build_tool = ComplexBuildTool()
homology_tool = HomologyTool()
