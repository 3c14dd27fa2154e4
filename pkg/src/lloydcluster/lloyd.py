"""Standard Lloyd clustering: multi-source Bellman-Ford plus border recentering."""

from __future__ import annotations

import warnings

import numpy as np

from . import _kernels
from .errors import EmptySeedSetError, NoBorderWarning, UnreachableNodeError

__all__ = ["bellman_ford", "most_interior_nodes", "lloyd_cluster"]


def bellman_ford(g, seeds, check_reachable=True):
    """Distance and nearest-seed index for every node.

    Parameters
    ----------
    g : WeightedGraph
    seeds : sequence of int
        Distinct 1-based seed nodes, each starting at distance zero.
    check_reachable : bool
        Raise UnreachableNodeError if some node stays at infinite distance.

    Returns
    -------
    m : ndarray
        Length n_node+1; m[i] is the 1-based position in ``seeds`` of the
        seed nearest to node i (0 if unreachable).
    d : ndarray
        Length n_node+1; d[i] is the shortest-path distance from that seed.
    """
    m, d, _ = _bellman_ford(g, seeds, check_reachable)
    return m, d


def _bellman_ford(g, seeds, check_reachable=True):
    seeds = np.asarray(seeds, dtype=np.int64)
    if seeds.shape[0] == 0:
        raise EmptySeedSetError("at least one seed node is required")
    if np.unique(seeds).shape[0] != seeds.shape[0]:
        raise ValueError("seed nodes must be distinct")
    if seeds.min() < 1 or seeds.max() > g.n_node:
        raise ValueError("seed nodes must lie in 1..n_node")

    n = g.n_node
    d = np.full(n + 1, np.inf)
    m = np.zeros(n + 1, dtype=np.int64)
    for a, i in enumerate(seeds, start=1):
        d[i] = 0.0
        m[i] = a

    sweeps = 0
    while _kernels.bf_sweep(g.row_offsets, g.col_indices, g.weights, m, d):
        sweeps += 1
    sweeps += 1  # the final no-change sweep

    if check_reachable and np.any(np.isinf(d[1:])):
        node = int(np.nonzero(np.isinf(d[1:]))[0][0]) + 1
        raise UnreachableNodeError(node)
    return m, d, sweeps


def most_interior_nodes(g, m):
    """Pick each cluster's node farthest from the inter-cluster border.

    Border nodes are both endpoints of every edge whose endpoints lie in
    different clusters. Each center starts as the highest-index node of its
    cluster and is replaced only by a node strictly farther from the border.

    Returns
    -------
    c : ndarray
        Length n_cluster+1 center array.
    """
    m = np.asarray(m, dtype=np.int64)
    n = g.n_node
    n_cluster = int(m[1:].max()) if n else 0

    border = np.zeros(n + 1, dtype=bool)
    for i in range(1, n + 1):
        cols, _ = g.neighbors(i)
        for j in cols:
            if m[i] != m[j]:
                border[i] = True
                border[j] = True
    border_nodes = np.nonzero(border[1:])[0] + 1

    if border_nodes.shape[0] == 0:
        warnings.warn(
            "no inter-cluster border; keeping highest-index nodes as centers",
            NoBorderWarning,
            stacklevel=2,
        )
        d = np.zeros(n + 1)
    else:
        _, d = bellman_ford(g, border_nodes, check_reachable=False)

    c = np.zeros(n_cluster + 1, dtype=np.int64)
    for i in range(1, n + 1):
        c[m[i]] = i
    for i in range(1, n + 1):
        j = c[m[i]]
        if d[i] > d[j]:
            c[m[i]] = i
    return c


def lloyd_cluster(g, c0, t_max=5):
    """Alternate nearest-center assignment and border recentering.

    Parameters
    ----------
    g : WeightedGraph
    c0 : sequence of int
        Distinct initial center nodes (one per cluster).
    t_max : int
        Iteration cap.

    Returns
    -------
    (m, c) : membership and center arrays (lengths n_node+1, n_cluster+1).
    """
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    c = _as_center_array(c0)
    m_prev = None
    c_prev = None
    for _ in range(t_max):
        m, _ = bellman_ford(g, c[1:])
        c = most_interior_nodes(g, m)
        if (
            m_prev is not None
            and np.array_equal(m, m_prev)
            and np.array_equal(c, c_prev)
        ):
            break
        m_prev, c_prev = m, c
    return m, c


def _as_center_array(c0):
    """Prefix a plain center list with the sentinel slot."""
    c0 = np.asarray(c0, dtype=np.int64)
    c = np.zeros(c0.shape[0] + 1, dtype=np.int64)
    c[1:] = c0
    return c
