"""Balanced Lloyd clustering.

Size-aware Bellman-Ford assignment with tie-breaking, per-cluster all-pairs
shortest paths, and energy-minimizing center updates. State operations
mutate a ClusterState in place; each state is owned by exactly one run.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import CapReachedWarning, DisconnectedClusterError, DuplicateCenterError
from .metrics import _raw_energies, compute_delta
from .state import ClusterState, IntraClusterPaths

__all__ = [
    "balanced_initialization",
    "balanced_bellman_ford",
    "clustered_floyd_warshall",
    "center_nodes",
    "balanced_lloyd_cluster",
    "state_from_membership",
    "TraceEntry",
]


class TraceEntry(NamedTuple):
    """Energy snapshot recorded by the optional trace hook."""

    event: str
    energy: float
    energy_delta: float


def balanced_initialization(c0, n_node):
    """Fresh state with every node unassigned except the given centers.

    Centers get distance 0, themselves as predecessor, one predecessor
    count, and their own cluster; every cluster starts at size 1.
    """
    c0 = np.asarray(c0, dtype=np.int64)
    if np.unique(c0).shape[0] != c0.shape[0]:
        raise DuplicateCenterError("center nodes must be distinct")
    if c0.shape[0] == 0:
        raise DuplicateCenterError("at least one center is required")
    if c0.min() < 1 or c0.max() > n_node:
        raise ValueError("center nodes must lie in 1..n_node")

    n_cluster = c0.shape[0]
    m = np.zeros(n_node + 1, dtype=np.int64)
    d = np.full(n_node + 1, np.inf)
    p = np.zeros(n_node + 1, dtype=np.int64)
    n = np.zeros(n_node + 1, dtype=np.int64)
    s = np.ones(n_cluster + 1, dtype=np.int64)
    c = np.zeros(n_cluster + 1, dtype=np.int64)
    c[1:] = c0
    for a in range(1, n_cluster + 1):
        i = c[a]
        d[i] = 0.0
        m[i] = a
        p[i] = i
        n[i] = 1
    return ClusterState(m, c, d, p, n, s)


def balanced_bellman_ford(g, st, t_bf_max=None, tol=1e-12, *,
                          tiebreaking=True, trace=None, delta=None):
    """Sweep edges until no node switches cluster, up to t_bf_max sweeps.

    Mutates ``st`` in place. Returns True (and emits CapReachedWarning) if
    the sweep cap was hit while switches were still happening, which may
    mean the clusters are not settled.
    """
    if t_bf_max is None:
        t_bf_max = g.n_node
    if t_bf_max < 1:
        raise ValueError("t_bf_max must be at least 1")
    if trace is not None and delta is None:
        delta = compute_delta(g)

    changed = True
    for _ in range(t_bf_max):
        changed = _kernels.balanced_bf_sweep(
            g.row_offsets, g.col_indices, g.weights,
            st.m, st.d, st.p, st.n, st.s, tol, tiebreaking,
        )
        if trace is not None:
            trace.append(TraceEntry("bf_sweep", *_raw_energies(st.d, st.s, delta)))
        if not changed:
            return False
    warnings.warn(
        f"sweep cap {t_bf_max} reached while nodes were still switching",
        CapReachedWarning,
        stacklevel=2,
    )
    return True


def clustered_floyd_warshall(g, m, n_cluster=None):
    """All-pairs shortest paths restricted to each cluster.

    Parameters
    ----------
    g : WeightedGraph
    m : ndarray
        Covering membership (length n_node+1, slot 0 ignored).
    n_cluster : int, optional
        Number of clusters; defaults to max(m).

    Returns
    -------
    IntraClusterPaths

    Raises
    ------
    DisconnectedClusterError
        If any within-cluster distance stays infinite.
    """
    m = np.ascontiguousarray(m, dtype=np.int64)
    n = g.n_node
    body = m[1:]
    if np.any(body < 1):
        bad = int(np.nonzero(body < 1)[0][0]) + 1
        raise ValueError(f"node {bad} is unassigned; membership must cover all nodes")
    if n_cluster is None:
        n_cluster = int(body.max()) if n else 0

    if n and int(body.max()) > n_cluster:
        raise ValueError(f"membership exceeds n_cluster={n_cluster}")
    order = np.argsort(body, kind="stable")
    cluster_nodes = np.ascontiguousarray(order + 1, dtype=np.int64)
    sizes = np.bincount(body, minlength=n_cluster + 1)[: n_cluster + 1]

    # cluster a occupies cluster_nodes[node_offsets[a]:node_offsets[a+1]] and
    # a sizes[a]^2 block of the flat tables at table_offsets[a]
    node_offsets = np.zeros(n_cluster + 2, dtype=np.int64)
    node_offsets[2:] = np.cumsum(sizes[1:])
    table_offsets = np.zeros(n_cluster + 2, dtype=np.int64)
    table_offsets[2:] = np.cumsum(sizes[1:].astype(np.int64) ** 2)

    local_index = np.zeros(n + 1, dtype=np.int64)
    for a in range(1, n_cluster + 1):
        lo, hi = node_offsets[a], node_offsets[a + 1]
        local_index[cluster_nodes[lo:hi]] = np.arange(hi - lo)

    d_flat = np.empty(int(table_offsets[-1]), dtype=np.float64)
    p_flat = np.empty(int(table_offsets[-1]), dtype=np.int64)
    _kernels.fw_tables(
        g.row_offsets, g.col_indices, g.weights, m,
        cluster_nodes, node_offsets, table_offsets, local_index,
        d_flat, p_flat,
    )
    paths = IntraClusterPaths(
        n_cluster, cluster_nodes, node_offsets, table_offsets,
        d_flat, p_flat, local_index,
    )
    if d_flat.shape[0] and np.any(np.isinf(d_flat)):
        for a in range(1, n_cluster + 1):
            if np.any(np.isinf(paths.distances(a))):
                raise DisconnectedClusterError(a)
    return paths


def center_nodes(g, st, paths, *, trace=None, delta=None):
    """Move each center to its cluster's energy-minimizing node.

    A center moves only if some node has a strictly smaller sum of squared
    within-cluster distances; on a move, d/p/n are reloaded from the new
    center's table rows. Mutates ``st``; returns True if any center moved.
    """
    changed = _kernels.center_sweep(
        paths.cluster_nodes, paths.node_offsets, paths.table_offsets,
        paths.local_index, paths.d_flat, paths.p_flat,
        st.c, st.d, st.p, st.n,
    )
    if trace is not None:
        if delta is None:
            delta = compute_delta(g)
        trace.append(TraceEntry("center_nodes", *_raw_energies(st.d, st.s, delta)))
    return bool(changed)


def state_from_membership(g, m, c, paths=None):
    """Quiescent state for an existing clustering.

    Distances and predecessors are loaded from each center's row of the
    within-cluster path tables, so the result matches what a converged
    balanced run would hold for the same (m, c).

    Returns
    -------
    (ClusterState, IntraClusterPaths)
    """
    m = np.ascontiguousarray(m, dtype=np.int64)
    c = np.ascontiguousarray(c, dtype=np.int64)
    n = g.n_node
    n_cluster = c.shape[0] - 1
    if paths is None:
        paths = clustered_floyd_warshall(g, m, n_cluster)

    d = np.full(n + 1, np.inf)
    p = np.zeros(n + 1, dtype=np.int64)
    nn = np.zeros(n + 1, dtype=np.int64)
    s = np.zeros(n_cluster + 1, dtype=np.int64)
    for a in range(1, n_cluster + 1):
        nodes = paths.nodes(a)
        s[a] = nodes.shape[0]
        row = paths.local_index[c[a]]
        d[nodes] = paths.distances(a)[row, :]
        p[nodes] = paths.predecessors(a)[row, :]
    for i in range(1, n + 1):
        nn[p[i]] += 1
    nn[0] = 0
    return ClusterState(m.copy(), c.copy(), d, p, nn, s), paths


def balanced_lloyd_cluster(g, c0, t_max=5, t_bf_max=None, tol=1e-12, *,
                           tiebreaking=True, trace=None):
    """Run balanced Lloyd clustering from the given centers.

    Alternates balanced Bellman-Ford, per-cluster Floyd-Warshall, and
    center updates until nothing changes or t_max iterations elapse.

    Parameters
    ----------
    g : WeightedGraph
    c0 : sequence of int
        Distinct initial centers.
    t_max : int
        Outer iteration cap.
    t_bf_max : int, optional
        Sweep cap per Bellman-Ford call (default: n_node).
    tol : float
        Relative tolerance for distance ties.
    tiebreaking : bool
        Enable the smaller-cluster tie switch.
    trace : list, optional
        Receives TraceEntry energy snapshots.

    Returns
    -------
    (ClusterState, IntraClusterPaths)
    """
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    st = balanced_initialization(c0, g.n_node)
    delta = compute_delta(g) if trace is not None else None
    if trace is not None:
        trace.append(TraceEntry("init", *_raw_energies(st.d, st.s, delta)))

    paths = None
    for _ in range(t_max):
        before = st.copy()
        balanced_bellman_ford(
            g, st, t_bf_max, tol,
            tiebreaking=tiebreaking, trace=trace, delta=delta,
        )
        paths = clustered_floyd_warshall(g, st.m, st.n_cluster)
        center_nodes(g, st, paths, trace=trace, delta=delta)
        if st.equals(before):
            break
    return st, paths
