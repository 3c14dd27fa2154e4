"""Greedy and distance-2 independent-set clustering baselines.

Both are sequential passes over the nodes in ascending order and give no
control over the number of clusters produced.
"""

from __future__ import annotations

import numpy as np

from .errors import UnassignedNodeError

__all__ = ["greedy_cluster", "mis2", "mis2_cluster"]


def greedy_cluster(g):
    """Two-pass greedy clustering.

    Pass 1 seeds a cluster at every node whose whole neighborhood is still
    unclustered, absorbing the neighborhood. Pass 2 attaches each leftover
    node to the neighboring cluster with the largest edge weight (ties go to
    the lowest cluster index), or seeds a new cluster from the node and its
    unclustered neighbors when it has no clustered neighbor.

    Returns
    -------
    (m, c) : membership and center arrays (lengths n_node+1, n_cluster+1).
    """
    n = g.n_node
    m = np.zeros(n + 1, dtype=np.int64)
    centers = [0]
    a = 1
    for i in range(1, n + 1):
        if m[i] != 0:
            continue
        cols, _ = g.neighbors(i)
        if np.all(m[cols] == 0):
            m[i] = a
            m[cols] = a
            centers.append(i)
            a += 1
    for i in range(1, n + 1):
        if m[i] != 0:
            continue
        cols, w = g.neighbors(i)
        clustered = m[cols] > 0
        if np.any(clustered):
            best = None
            for j, wij in zip(cols[clustered], w[clustered]):
                key = (-wij, m[j])
                if best is None or key < best[0]:
                    best = (key, m[j])
            m[i] = best[1]
        else:
            m[i] = a
            for j in cols:
                if m[j] == 0:
                    m[j] = a
            centers.append(i)
            a += 1
    return m, np.asarray(centers, dtype=np.int64)


def mis2(g):
    """Greedy maximal set of nodes pairwise more than two hops apart.

    Hops count edges, not weights. Nodes are considered in ascending order;
    a node joins unless a chosen node is within two hops.

    Returns a 1-based node array (no sentinel slot).
    """
    n = g.n_node
    blocked = np.zeros(n + 1, dtype=bool)
    chosen = []
    for i in range(1, n + 1):
        if blocked[i]:
            continue
        chosen.append(i)
        blocked[i] = True
        cols, _ = g.neighbors(i)
        for j in cols:
            blocked[j] = True
            cols2, _ = g.neighbors(j)
            for k in cols2:
                blocked[k] = True
    return np.asarray(chosen, dtype=np.int64)


def mis2_cluster(g):
    """Clustering seeded at a distance-2 maximal independent set.

    Pass 1 assigns each chosen center and its direct neighbors; pass 2
    propagates the cluster of already-assigned nodes to their unassigned
    neighbors. Assignment snapshots the pass-1 frontier so propagation stays
    within two hops of the centers.

    Returns
    -------
    (m, c) : membership and center arrays (lengths n_node+1, n_cluster+1).

    Raises
    ------
    UnassignedNodeError
        If propagation leaves a node uncovered (non-maximal seed set).
    """
    centers = mis2(g)
    n = g.n_node
    m = np.zeros(n + 1, dtype=np.int64)
    for a, i in enumerate(centers, start=1):
        m[i] = a
        cols, _ = g.neighbors(i)
        for j in cols:
            m[j] = a
    assigned = np.nonzero(m[1:])[0] + 1
    for i in assigned:
        a = m[i]
        cols, _ = g.neighbors(i)
        for j in cols:
            if m[j] == 0:
                m[j] = a
    if np.any(m[1:] == 0):
        node = int(np.nonzero(m[1:] == 0)[0][0]) + 1
        raise UnassignedNodeError(node)
    c = np.zeros(centers.shape[0] + 1, dtype=np.int64)
    c[1:] = centers
    return m, c
