"""
gaugeflow - Discrete Gauge Theories on Simplicial Complexes
Principal bundles, connections and holonomy over combinatorial bases
"""

__version__ = "0.1.0"
__description__ = "Discrete gauge theories on simplicial complexes"

# Import main components
from .config import get_settings
from .groups import create_group
from .topology import SimplicialComplex, from_maximal_simplices
from .utils import get_logger
from .workflow import run

__all__ = [
    "get_settings",
    "get_logger",
    "create_group",
    "SimplicialComplex",
    "from_maximal_simplices",
    "run",
]
