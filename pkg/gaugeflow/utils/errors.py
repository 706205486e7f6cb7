"""Exception types shared by every gaugeflow module"""

from typing import List, Tuple


class GaugeFlowError(Exception):
    """Base class for all library errors"""


class InputError(GaugeFlowError, ValueError):
    """Malformed or out-of-contract input"""


class SingularInputError(GaugeFlowError, ValueError):
    """Input sits on a branch cut or makes an operation singular"""


class AmbiguousGeodesicError(SingularInputError):
    """A step of magnitude close to pi has no unique shortest geodesic"""


class UnsupportedError(GaugeFlowError, NotImplementedError):
    """Operation not available for the given group kind or dimension"""


class NoAdmissiblePathError(GaugeFlowError):
    """No path survives the cutoffs of a path family"""


class StageError(GaugeFlowError):
    """A pipeline stage failed"""


class ConfigError(GaugeFlowError):
    """Experiment configuration failed validation"""

    def __init__(self, problems: List[Tuple[str, str]]):
        self.problems = problems
        lines = [f"{path}: {message}" for path, message in problems]
        super().__init__("invalid configuration\n" + "\n".join(lines))
