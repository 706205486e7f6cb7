"""Shared request handling for command tools"""

from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from pydantic import ValidationError

from ..utils.errors import ConfigError, InputError, UnsupportedError
from ..utils.logger import get_logger

logger = get_logger(__name__)

Request = Mapping[str, Any]
ToolResponse = Dict[str, Any]


class GaugeTool:
    """
    One command: validates a JSON request, calls the library and reports the outcome.

    Subclasses implement ``execute``. Input problems come back with
    ``source="validation"``; anything else with ``source="error"``.
    """

    name = "tool"
    source = "gaugeflow"

    def __call__(self, request: Request, out: Optional[str] = None) -> ToolResponse:
        try:
            logger.info(f"[TOOL] {self.name} with keys {sorted(request)}")
            data = self.execute(request, Path(out) if out else None)
            return {"success": True, "data": data, "source": self.source}
        except (InputError, UnsupportedError, ConfigError, ValidationError, KeyError) as e:
            logger.error(f"[TOOL] {self.name} rejected its input: {str(e)}")
            return {"success": False, "error": f"Invalid request: {str(e)}", "source": "validation"}
        except Exception as e:
            logger.error(f"[TOOL] Error in {self.name}: {str(e)}")
            return {"success": False, "error": f"{self.name} failed: {str(e)}", "source": "error"}

    def execute(self, request: Request, out: Optional[Path]) -> Any:
        raise NotImplementedError


def require(request: Request, key: str) -> Any:
    if key not in request:
        raise InputError(f"request is missing '{key}'")
    return request[key]


# Request keys that steer a command rather than describe an object
CONTROL_KEYS = ("seed", "threads", "k")


def complex_payload(request: Request) -> Dict[str, Any]:
    """The ``complex`` entry, or the request itself minus control keys"""
    if "complex" in request:
        return section(request, "complex")
    return {k: v for k, v in request.items() if k not in CONTROL_KEYS}


def section(request: Request, key: str) -> Dict[str, Any]:
    value = request.get(key) or {}
    if not isinstance(value, Mapping):
        raise InputError(f"'{key}' must be a JSON object")
    return dict(value)
