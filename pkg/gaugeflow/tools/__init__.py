"""Command tools, one per CLI subcommand"""

from typing import Dict

from .base import GaugeTool
from .bundle_tools import bundle_assign_tool, bundle_classes_tool
from .connection_tools import conn_holonomy_tool, conn_optimize_tool, curvature_map_tool
from .model_tools import evolve_tool, ising_run_tool, net_generate_tool
from .stats_tools import stats_cumulants_tool
from .topology_tools import complex_build_tool, homology_tool

TOOLS: Dict[str, GaugeTool] = {
    tool.name: tool
    for tool in (
        complex_build_tool,
        homology_tool,
        bundle_assign_tool,
        bundle_classes_tool,
        conn_optimize_tool,
        conn_holonomy_tool,
        curvature_map_tool,
        net_generate_tool,
        ising_run_tool,
        stats_cumulants_tool,
        evolve_tool,
    )
}

__all__ = [
    "GaugeTool",
    "TOOLS",
    # Topology tools
    "complex_build_tool",
    "homology_tool",
    # Bundle tools
    "bundle_assign_tool",
    "bundle_classes_tool",
    # Connection tools
    "conn_optimize_tool",
    "conn_holonomy_tool",
    "curvature_map_tool",
    # Model tools
    "net_generate_tool",
    "ising_run_tool",
    "evolve_tool",
    # Stats tools
    "stats_cumulants_tool",
]
