"""Graph clustering toolkit: standard, balanced, and rebalanced Lloyd
clustering on weighted graphs, greedy and independent-set baselines, and a
smoothed-aggregation multigrid harness for measuring clustering quality.

Nodes and clusters are numbered from 1; index 0 is the unassigned/none
sentinel. Per-node arrays have length n_node+1 and per-cluster arrays
length n_cluster+1, with slot 0 reserved.
"""

from .amg import (
    ConvergenceResult,
    Hierarchy,
    beta_localization,
    convergence_factor,
    cycle_complexity,
    poisson_grid,
    poisson_path,
    sa_setup,
    smoothed_interpolation,
    tentative_restriction,
    v_cycle,
    work_per_digit,
)
from .balanced import (
    TraceEntry,
    balanced_bellman_ford,
    balanced_initialization,
    balanced_lloyd_cluster,
    center_nodes,
    clustered_floyd_warshall,
    state_from_membership,
)
from .baselines import greedy_cluster, mis2, mis2_cluster
from .graphs import (
    ValidationReport,
    WeightedGraph,
    grid_graph,
    path_graph,
    strength_to_distance,
    validate_clustering,
    validate_graph,
)
from .lloyd import bellman_ford, lloyd_cluster, most_interior_nodes
from .metrics import (
    ClusterStats,
    cluster_stats,
    compute_delta,
    energy_h,
    energy_h_delta,
)
from .mmio import load_matrix_market
from .rebalance import (
    RebalancePlan,
    elimination_penalty,
    mark_unavailable,
    rebalance,
    rebalance_plan,
    rebalanced_lloyd_cluster,
    split_improvement,
)
from .state import ClusterState, IntraClusterPaths

__version__ = "0.1.0"
