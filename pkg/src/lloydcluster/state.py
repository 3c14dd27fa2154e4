"""Mutable per-run clustering state and per-cluster path tables.

Arrays follow the package convention: per-node arrays have length n_node+1
and per-cluster arrays length n_cluster+1, with slot 0 reserved as a
sentinel/scratch slot that algorithms may write but never read.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ClusterState", "IntraClusterPaths"]


class ClusterState:
    """Working state of a balanced clustering run.

    Attributes
    ----------
    m : ndarray
        Per-node cluster index in 0..n_cluster (0 = unassigned).
    c : ndarray
        Per-cluster center node.
    d : ndarray
        Per-node distance to its center (inf while unassigned).
    p : ndarray
        Per-node predecessor on the path from its center (0 = none).
    n : ndarray
        Per-node count of nodes having this node as predecessor.
    s : ndarray
        Per-cluster node count.
    """

    __slots__ = ("m", "c", "d", "p", "n", "s")

    def __init__(self, m, c, d, p, n, s):
        self.m = m
        self.c = c
        self.d = d
        self.p = p
        self.n = n
        self.s = s

    @property
    def n_node(self):
        return self.m.shape[0] - 1

    @property
    def n_cluster(self):
        return self.c.shape[0] - 1

    @property
    def membership(self):
        """Per-node cluster indices without the sentinel slot."""
        return self.m[1:]

    @property
    def distances(self):
        """Per-node center distances without the sentinel slot."""
        return self.d[1:]

    @property
    def sizes(self):
        """Per-cluster node counts without the sentinel slot."""
        return self.s[1:]

    def copy(self):
        return ClusterState(
            self.m.copy(), self.c.copy(), self.d.copy(),
            self.p.copy(), self.n.copy(), self.s.copy(),
        )

    def equals(self, other):
        """True if every state array matches (sentinel slots excluded)."""
        return (
            np.array_equal(self.m[1:], other.m[1:])
            and np.array_equal(self.c[1:], other.c[1:])
            and np.array_equal(self.d[1:], other.d[1:])
            and np.array_equal(self.p[1:], other.p[1:])
            and np.array_equal(self.n[1:], other.n[1:])
            and np.array_equal(self.s[1:], other.s[1:])
        )

    def __repr__(self):
        return f"ClusterState(n_node={self.n_node}, n_cluster={self.n_cluster})"


class IntraClusterPaths:
    """Dense all-pairs shortest paths within each cluster.

    Tables are packed: cluster a's node list is
    cluster_nodes[node_offsets[a]:node_offsets[a+1]] (ascending global ids)
    and its size-s_a dense tables live at table_offsets[a] in d_flat/p_flat.
    Distance tables hold inf for unreachable pairs; predecessor tables hold
    global node ids with 0 for "none".
    """

    __slots__ = (
        "n_cluster", "cluster_nodes", "node_offsets",
        "table_offsets", "d_flat", "p_flat", "local_index",
    )

    def __init__(self, n_cluster, cluster_nodes, node_offsets,
                 table_offsets, d_flat, p_flat, local_index):
        self.n_cluster = int(n_cluster)
        self.cluster_nodes = cluster_nodes
        self.node_offsets = node_offsets
        self.table_offsets = table_offsets
        self.d_flat = d_flat
        self.p_flat = p_flat
        self.local_index = local_index

    def size(self, a):
        """Number of nodes in cluster a."""
        return int(self.node_offsets[a + 1] - self.node_offsets[a])

    def nodes(self, a):
        """Ascending global node ids of cluster a."""
        return self.cluster_nodes[self.node_offsets[a]:self.node_offsets[a + 1]]

    def distances(self, a):
        """Dense distance table of cluster a (rows/cols in nodes(a) order)."""
        sz = self.size(a)
        base = self.table_offsets[a]
        return self.d_flat[base:base + sz * sz].reshape(sz, sz)

    def predecessors(self, a):
        """Dense predecessor table of cluster a (global node ids)."""
        sz = self.size(a)
        base = self.table_offsets[a]
        return self.p_flat[base:base + sz * sz].reshape(sz, sz)

    def diameter(self, a):
        """Largest pairwise distance within cluster a."""
        d = self.distances(a)
        return float(d.max()) if d.size else 0.0

    def __repr__(self):
        return f"IntraClusterPaths(n_cluster={self.n_cluster})"
