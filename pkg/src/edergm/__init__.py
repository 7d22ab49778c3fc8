"""Edge-degeneracy exponential random graph model.

A two-parameter exponential family on labeled simple graphs whose
sufficient statistic is the pair (edge count, degeneracy), normalized to
the unit square. The package covers the statistic itself (k-core
decomposition), the model polytope and its lattice/boundary structure,
extremal witness constructions, the normal-fan geometry driving the
model's large-parameter behavior, exact small-n distributions via a full
graph census, maximum-likelihood fitting, and Metropolis sampling.
"""

from ._kernels import active_backend, set_backend
from .extremal import (BoundaryClass, NotRealizableError,
                       lower_witness_complement, named_boundary_graphs,
                       realize, upper_witness)
from .fan import (ConeClass, FaceNormals, alpha, alpha_exact,
                  classify_direction, face_normals, limit_contains_exact,
                  lower_limit, nearest_extremal_vertex, upper_limit)
from .graph import (CoreDecomposition, Graph, GraphFormatError,
                    NormalizedStat, StatPair, complement, core_decompose,
                    disjoint_union, format_edge_list, is_connected, is_tree,
                    join, node_pairs, normalize, parse_edge_list,
                    read_edge_list, stat_pair, write_edge_list)
from .model import (CensusCacheError, CensusSizeError, CensusTable, MLEFit,
                    build_census, distribution_rows, exact_distribution, load_census,
                    log_partition, mean_stat, mle_fit, moments, save_census)
from .polytope import (PointClass, Polytope, build_polytope, classify_point,
                       count_integer_points, interior_proportion, lower_bound,
                       mle_exists, upper_bound)
from .sampler import (BetaInvarianceReport, ChainConfig, ChainResult,
                      ExtremalReport, LadderPoint, beta_invariance_check,
                      chain_trace, extremal_experiment, run_chain)

__version__ = "0.1.0"

__all__ = [
    "active_backend", "set_backend",
    "BoundaryClass", "NotRealizableError", "lower_witness_complement",
    "named_boundary_graphs", "realize", "upper_witness",
    "ConeClass", "FaceNormals", "alpha", "alpha_exact", "classify_direction",
    "face_normals", "limit_contains_exact", "lower_limit",
    "nearest_extremal_vertex", "upper_limit",
    "CoreDecomposition", "Graph", "GraphFormatError", "NormalizedStat", "StatPair",
    "complement", "core_decompose", "disjoint_union", "format_edge_list",
    "is_connected", "is_tree", "join", "node_pairs", "normalize",
    "parse_edge_list", "read_edge_list", "stat_pair", "write_edge_list",
    "CensusCacheError", "CensusSizeError", "CensusTable", "MLEFit",
    "build_census", "distribution_rows", "exact_distribution", "load_census", "log_partition",
    "mean_stat", "mle_fit", "moments", "save_census",
    "PointClass", "Polytope", "build_polytope", "classify_point",
    "count_integer_points", "interior_proportion", "lower_bound", "mle_exists",
    "upper_bound",
    "BetaInvarianceReport", "ChainConfig", "ChainResult", "ExtremalReport",
    "LadderPoint", "beta_invariance_check", "chain_trace",
    "extremal_experiment", "run_chain",
    "__version__",
]
