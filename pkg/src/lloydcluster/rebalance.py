"""Global energy reduction by paired cluster elimination and splitting.

Each accepted pair removes the cluster with the cheapest elimination
penalty and splits the cluster with the largest improvement in two, so the
number of clusters never changes while the total energy goes down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .balanced import TraceEntry, balanced_lloyd_cluster
from .metrics import _raw_energies, compute_delta

__all__ = [
    "RebalancePlan",
    "rebalance_plan",
    "elimination_penalty",
    "split_improvement",
    "mark_unavailable",
    "rebalance",
    "rebalanced_lloyd_cluster",
]


@dataclass
class RebalancePlan:
    """Per-cluster elimination penalties, split improvements, proposed split
    centers, and modifiable flags (all slot-0 arrays)."""

    penalty: np.ndarray
    improvement: np.ndarray
    center1: np.ndarray
    center2: np.ndarray
    modifiable: np.ndarray


def rebalance_plan(g, st, paths):
    """Evaluate elimination penalties and split improvements for every
    cluster; all clusters start out modifiable."""
    penalty = elimination_penalty(g, st, paths)
    improvement, center1, center2 = split_improvement(st, paths)
    modifiable = np.ones(st.n_cluster + 1, dtype=bool)
    return RebalancePlan(penalty, improvement, center1, center2, modifiable)


def elimination_penalty(g, st, paths):
    """Energy increase from dissolving each cluster into its neighbors.

    Every node of a dissolved cluster re-attaches through the cheapest
    chain: a neighboring cluster's center distance, one inter-cluster edge,
    and a within-cluster path to the node. Isolated clusters get inf.

    Returns a slot-0 float array of length n_cluster+1.
    """
    reach = np.full(g.n_node + 1, np.inf)
    _kernels.exterior_reach(
        g.row_offsets, g.col_indices, g.weights, st.m, st.d, reach
    )
    penalty = np.zeros(st.n_cluster + 1)
    _kernels.elimination_scan(
        paths.cluster_nodes, paths.node_offsets, paths.table_offsets,
        paths.d_flat, reach, st.d, penalty,
    )
    return penalty


def split_improvement(st, paths):
    """Energy decrease from the best two-center split of each cluster.

    All ordered center pairs within the cluster are tried; each node is
    charged its squared distance to the nearer of the two candidates.

    Returns (improvement, center1, center2) slot-0 arrays.
    """
    n_cluster = st.n_cluster
    improvement = np.zeros(n_cluster + 1)
    center1 = np.zeros(n_cluster + 1, dtype=np.int64)
    center2 = np.zeros(n_cluster + 1, dtype=np.int64)
    _kernels.split_scan(
        paths.cluster_nodes, paths.node_offsets, paths.table_offsets,
        paths.d_flat, st.d, improvement, center1, center2,
    )
    return improvement, center1, center2


def mark_unavailable(a, st, modifiable, g):
    """Mark cluster a and every cluster adjacent to it as unmodifiable."""
    modifiable[a] = False
    members = np.nonzero(st.m[1:] == a)[0] + 1
    for i in members:
        cols, _ = g.neighbors(i)
        for j in cols:
            modifiable[st.m[j]] = False


def rebalance(g, st, paths, *, log=None):
    """Pair cheapest eliminations with best splits while energy decreases.

    Walks the elimination penalties in ascending order and the split
    improvements in descending order. A pair is accepted only while the
    improvement strictly exceeds the penalty; accepting a pair makes both
    neighborhoods unavailable and replaces the eliminated cluster's center
    with the split cluster's first proposed center.

    Returns the new center array (length n_cluster+1); memberships must be
    rebuilt by re-running the balanced clustering from these centers.
    """
    n_cluster = st.n_cluster
    plan = rebalance_plan(g, st, paths)
    penalty = plan.penalty
    improvement = plan.improvement
    modifiable = plan.modifiable

    by_penalty = np.argsort(penalty[1:], kind="stable") + 1
    by_improvement = np.argsort(improvement[1:], kind="stable") + 1

    c = st.c.copy()
    i_l = 0
    i_s = n_cluster - 1
    while i_l < n_cluster and i_s >= 0:
        a_l = int(by_penalty[i_l])
        a_s = int(by_improvement[i_s])
        if not modifiable[a_l] or a_l == a_s:
            i_l += 1
            continue
        if not modifiable[a_s]:
            i_s -= 1
            continue
        if penalty[a_l] >= improvement[a_s]:
            break
        mark_unavailable(a_l, st, modifiable, g)
        mark_unavailable(a_s, st, modifiable, g)
        c[a_l] = plan.center1[a_s]
        c[a_s] = plan.center2[a_s]
        if log is not None:
            log.append(
                {
                    "eliminated": a_l,
                    "split": a_s,
                    "penalty": float(penalty[a_l]),
                    "improvement": float(improvement[a_s]),
                }
            )
    return c


def rebalanced_lloyd_cluster(g, c0, t_max=5, t_outer_max=4, t_bf_max=None,
                             tol=1e-12, *, tiebreaking=True, trace=None,
                             rebalance_log=None):
    """Balanced Lloyd clustering interleaved with rebalancing sweeps.

    Parameters
    ----------
    g : WeightedGraph
    c0 : sequence of int
        Distinct initial centers.
    t_max : int
        Iteration cap of each inner balanced run.
    t_outer_max : int
        Number of rebalance sweeps.
    t_bf_max, tol, tiebreaking, trace
        Passed to the balanced runs.
    rebalance_log : list, optional
        Receives one dict per accepted eliminate/split pair.

    Returns
    -------
    (ClusterState, IntraClusterPaths)
        State of the last balanced run; the cluster count equals len(c0)
        throughout.
    """
    if t_outer_max < 1:
        raise ValueError("t_outer_max must be at least 1")
    centers = np.asarray(c0, dtype=np.int64)
    st = paths = None
    for _ in range(t_outer_max):
        st, paths = balanced_lloyd_cluster(
            g, centers, t_max, t_bf_max, tol,
            tiebreaking=tiebreaking, trace=trace,
        )
        c_new = rebalance(g, st, paths, log=rebalance_log)
        if trace is not None:
            delta = compute_delta(g)
            trace.append(TraceEntry("rebalance", *_raw_energies(st.d, st.s, delta)))
        if np.array_equal(c_new[1:], st.c[1:]):
            break
        centers = c_new[1:]
    return st, paths
