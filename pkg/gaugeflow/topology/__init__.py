"""
Topology package: complexes, k-paths and homology
"""

from .complex import (
    OrientedSimplex,
    PointCloud,
    SimplicialComplex,
    boundary_faces,
    build_vietoris_rips,
    build_vietoris_rips_from_distances,
    common_faces,
    faced_simplices,
    from_maximal_simplices,
    orientation_equal,
    permutation_sign,
)
from .homology import (
    AbelianGroup,
    HomologyDescriptor,
    SmithForm,
    betti_numbers,
    boundary_matrix,
    in_column_image,
    simplicial_homology,
    smith_normal_form,
)
from .paths import (
    BoundaryRealization,
    CycleSearch,
    DDWitness,
    KPath,
    SearchVerdict,
    WitnessStatus,
    boundary_realizations,
    chain_boundary,
    compose,
    dd_empty_witness,
    inverse,
    is_cycle,
    path_boundary_realizations,
    search_cycle,
)

__all__ = [
    # Complexes
    "OrientedSimplex",
    "PointCloud",
    "SimplicialComplex",
    "boundary_faces",
    "build_vietoris_rips",
    "build_vietoris_rips_from_distances",
    "common_faces",
    "faced_simplices",
    "from_maximal_simplices",
    "orientation_equal",
    "permutation_sign",
    # Paths
    "BoundaryRealization",
    "CycleSearch",
    "DDWitness",
    "KPath",
    "SearchVerdict",
    "WitnessStatus",
    "boundary_realizations",
    "chain_boundary",
    "compose",
    "dd_empty_witness",
    "inverse",
    "is_cycle",
    "path_boundary_realizations",
    "search_cycle",
    # Homology
    "AbelianGroup",
    "HomologyDescriptor",
    "SmithForm",
    "betti_numbers",
    "boundary_matrix",
    "in_column_image",
    "simplicial_homology",
    "smith_normal_form",
]
