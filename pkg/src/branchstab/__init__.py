"""Degree-Rips hierarchies, branch-point trees and their Hausdorff stability."""

from .branch import (
    BranchTree,
    branch_join,
    extract_branch_points,
    max_branch_below,
    retraction_check,
)
from .errors import (
    DataError,
    HallConditionError,
    InvalidNodeError,
    JoinUndefinedError,
    StabilityError,
)
from .hierarchy import (
    GammaNode,
    GammaTree,
    build_gamma,
    join,
    join_many,
    node_leq,
    slice_ultrametric,
)
from .io import read_cloud
from .metric import (
    DistanceMatrix,
    PointCloud,
    ScaleGrid,
    SubsetWitness,
    bottleneck_inject,
    config_hausdorff_distance,
    distance_matrix,
    hausdorff_distance,
    phase_change_scales,
)
from .rips import Partition, VertexSet, brute_force_components, components_at, vertex_set
from .stability import (
    InterleavingReport,
    NestedPair,
    ThetaMap,
    induced_map_i,
    induced_map_sigma,
    induced_map_theta,
    theta_vertex_map,
    verify_interleaving,
)

__version__ = "0.1.0"

__all__ = [
    "BranchTree",
    "DataError",
    "DistanceMatrix",
    "GammaNode",
    "GammaTree",
    "HallConditionError",
    "InterleavingReport",
    "InvalidNodeError",
    "JoinUndefinedError",
    "NestedPair",
    "Partition",
    "PointCloud",
    "ScaleGrid",
    "StabilityError",
    "SubsetWitness",
    "ThetaMap",
    "VertexSet",
    "bottleneck_inject",
    "branch_join",
    "brute_force_components",
    "build_gamma",
    "components_at",
    "config_hausdorff_distance",
    "distance_matrix",
    "extract_branch_points",
    "hausdorff_distance",
    "induced_map_i",
    "induced_map_sigma",
    "induced_map_theta",
    "join",
    "join_many",
    "max_branch_below",
    "node_leq",
    "phase_change_scales",
    "read_cloud",
    "retraction_check",
    "slice_ultrametric",
    "theta_vertex_map",
    "verify_interleaving",
    "vertex_set",
]
