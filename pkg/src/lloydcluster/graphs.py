"""Weighted-graph data model, validation, and test-graph generators.

Nodes are numbered 1..n_node throughout the package; index 0 is reserved as
the "none" sentinel. Per-node arrays therefore have length n_node + 1 with
slot 0 unused. Edges are stored in compressed-row form: the out-edges of node
i occupy positions row_offsets[i-1]:row_offsets[i] of col_indices/weights.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .errors import (
    InvalidSizeError,
    MalformedOffsetsError,
    NegativeWeightError,
    NotSquareError,
    SelfLoopError,
)

__all__ = [
    "WeightedGraph",
    "validate_graph",
    "validate_clustering",
    "ValidationReport",
    "path_graph",
    "grid_graph",
    "strength_to_distance",
]


class WeightedGraph:
    """Sparse directed graph with strictly positive edge weights.

    Parameters
    ----------
    n_node : int
        Number of vertices.
    row_offsets : ndarray
        int64 array of length n_node+1; out-edges of node i live at
        positions row_offsets[i-1]:row_offsets[i].
    col_indices : ndarray
        int64 array of 1-based head-node indices.
    weights : ndarray
        float64 array of edge weights, parallel to col_indices.
    symmetric_pattern : bool
        Whether (i,j) stored implies (j,i) stored. Recorded at
        construction; checked by validate_graph.
    """

    __slots__ = ("n_node", "row_offsets", "col_indices", "weights", "symmetric_pattern")

    def __init__(self, n_node, row_offsets, col_indices, weights, symmetric_pattern):
        self.n_node = int(n_node)
        self.row_offsets = np.ascontiguousarray(row_offsets, dtype=np.int64)
        self.col_indices = np.ascontiguousarray(col_indices, dtype=np.int64)
        self.weights = np.ascontiguousarray(weights, dtype=np.float64)
        self.symmetric_pattern = bool(symmetric_pattern)

    @property
    def n_edge(self):
        """Number of stored (directed) edges."""
        return int(self.col_indices.shape[0])

    def neighbors(self, i):
        """Return (head nodes, weights) of the out-edges of node i."""
        lo, hi = self.row_offsets[i - 1], self.row_offsets[i]
        return self.col_indices[lo:hi], self.weights[lo:hi]

    @classmethod
    def from_edges(cls, n_node, tails, heads, weights, symmetric_pattern=None):
        """Build a graph from parallel 1-based edge arrays.

        Duplicate edges are summed. If symmetric_pattern is None it is
        detected from the stored pattern.
        """
        tails = np.asarray(tails, dtype=np.int64)
        heads = np.asarray(heads, dtype=np.int64)
        weights = np.asarray(weights, dtype=np.float64)
        a = sp.coo_matrix(
            (weights, (tails - 1, heads - 1)), shape=(n_node, n_node)
        ).tocsr()
        a.sum_duplicates()
        if symmetric_pattern is None:
            pattern = a.copy()
            pattern.data[:] = 1.0
            symmetric_pattern = (pattern != pattern.T).nnz == 0
        return cls(
            n_node,
            a.indptr.astype(np.int64),
            a.indices.astype(np.int64) + 1,
            a.data,
            symmetric_pattern,
        )

    @classmethod
    def from_scipy(cls, a, symmetric_pattern=None):
        """Build a graph from a scipy sparse matrix, dropping the diagonal."""
        a = sp.csr_matrix(a, copy=True)
        a.setdiag(0.0)
        a.eliminate_zeros()
        coo = a.tocoo()
        return cls.from_edges(
            a.shape[0], coo.row + 1, coo.col + 1, coo.data, symmetric_pattern
        )

    def to_scipy(self):
        """Return the weight matrix as a 0-based scipy CSR matrix."""
        return sp.csr_matrix(
            (self.weights.copy(), self.col_indices - 1, self.row_offsets),
            shape=(self.n_node, self.n_node),
        )

    def to_edge_csv(self, path):
        """Write the edge list as ``i,j,w`` lines (one directed edge per line)."""
        with open(path, "w", encoding="ascii") as fh:
            for i in range(1, self.n_node + 1):
                lo, hi = self.row_offsets[i - 1], self.row_offsets[i]
                for e in range(lo, hi):
                    fh.write(f"{i},{self.col_indices[e]},{float(self.weights[e])!r}\n")

    def __repr__(self):
        return (
            f"WeightedGraph(n_node={self.n_node}, n_edge={self.n_edge}, "
            f"symmetric_pattern={self.symmetric_pattern})"
        )


def validate_graph(g):
    """Check the structural invariants of a WeightedGraph.

    Raises MalformedOffsetsError, NegativeWeightError, or SelfLoopError
    naming the first violation; returns None when the graph is valid.
    """
    ro = g.row_offsets
    if ro.shape[0] != g.n_node + 1:
        raise MalformedOffsetsError(
            f"row_offsets has length {ro.shape[0]}, expected {g.n_node + 1}"
        )
    if ro[0] != 0 or ro[-1] != g.col_indices.shape[0]:
        raise MalformedOffsetsError("row_offsets does not span the edge arrays")
    if np.any(np.diff(ro) < 0):
        row = int(np.nonzero(np.diff(ro) < 0)[0][0]) + 1
        raise MalformedOffsetsError(f"row_offsets decreases at row {row}")
    if g.col_indices.shape[0] != g.weights.shape[0]:
        raise MalformedOffsetsError("col_indices and weights differ in length")
    if g.n_edge:
        bad = (g.col_indices < 1) | (g.col_indices > g.n_node)
        if np.any(bad):
            e = int(np.nonzero(bad)[0][0])
            raise MalformedOffsetsError(
                f"edge {e} has head {g.col_indices[e]} outside 1..{g.n_node}"
            )
    for i in range(1, g.n_node + 1):
        lo, hi = ro[i - 1], ro[i]
        for e in range(lo, hi):
            j = g.col_indices[e]
            if j == i:
                raise SelfLoopError(i)
            if g.weights[e] <= 0.0:
                raise NegativeWeightError(i, j, g.weights[e])
    if g.symmetric_pattern:
        a = g.to_scipy()
        a.data[:] = 1.0
        if (a != a.T).nnz != 0:
            raise MalformedOffsetsError(
                "symmetric_pattern is set but the stored pattern is asymmetric"
            )


class ValidationReport:
    """Outcome of validate_clustering: truthy iff the clustering is valid."""

    def __init__(self, ok, violated_property=None, cluster=None, message=None):
        self.ok = bool(ok)
        self.violated_property = violated_property
        self.cluster = cluster
        self.message = message

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ValidationReport(ok)"
        return f"ValidationReport(property={self.violated_property}: {self.message})"


def validate_clustering(g, m, c):
    """Check that (m, c) is a valid clustering of g.

    A valid clustering is a non-overlapping covering: (1) every node has a
    cluster index in 1..n_cluster, (2) each cluster's induced subgraph is
    connected, and (3) each center belongs to the cluster it centers.

    Parameters
    ----------
    g : WeightedGraph
    m : ndarray
        Membership array of length n_node+1 (slot 0 ignored).
    c : ndarray
        Center array of length n_cluster+1 (slot 0 ignored).

    Returns
    -------
    ValidationReport
        Truthy on success; otherwise names the first violated property.
    """
    m = np.asarray(m, dtype=np.int64)
    c = np.asarray(c, dtype=np.int64)
    n = g.n_node
    n_cluster = c.shape[0] - 1

    body = m[1:]
    if np.any((body < 1) | (body > n_cluster)):
        node = int(np.nonzero((body < 1) | (body > n_cluster))[0][0]) + 1
        return ValidationReport(
            False, 1, None, f"node {node} has membership {m[node]} outside 1..{n_cluster}"
        )

    for a in range(1, n_cluster + 1):
        members = np.nonzero(body == a)[0] + 1
        if members.shape[0] == 0:
            return ValidationReport(False, 1, a, f"cluster {a} is empty")
        if not _cluster_connected(g, m, a, members):
            return ValidationReport(
                False, 2, a, f"cluster {a} induces a disconnected subgraph"
            )

    for a in range(1, n_cluster + 1):
        ca = c[a]
        if ca < 1 or ca > n or m[ca] != a:
            return ValidationReport(
                False, 3, a, f"center {ca} of cluster {a} has membership {m[ca] if 1 <= ca <= n else 'n/a'}"
            )
    return ValidationReport(True)


def _cluster_connected(g, m, a, members):
    # Reachability within the induced subgraph; for directed patterns the
    # definition requires paths between every ordered pair, so we also check
    # the reverse graph.
    reached = _reach_within(g, m, a, members[0])
    if reached != set(members.tolist()):
        return False
    if not g.symmetric_pattern:
        rev = _reverse_adjacency(g, m, a, members)
        seen = {int(members[0])}
        stack = [int(members[0])]
        while stack:
            i = stack.pop()
            for j in rev.get(i, ()):
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        if seen != set(members.tolist()):
            return False
    return True


def _reach_within(g, m, a, start):
    seen = {int(start)}
    stack = [int(start)]
    while stack:
        i = stack.pop()
        cols, _ = g.neighbors(i)
        for j in cols:
            j = int(j)
            if m[j] == a and j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def _reverse_adjacency(g, m, a, members):
    rev = {}
    member_set = set(members.tolist())
    for i in member_set:
        cols, _ = g.neighbors(i)
        for j in cols:
            j = int(j)
            if j in member_set:
                rev.setdefault(j, []).append(i)
    return rev


def path_graph(n, w=1.0):
    """Chain of n nodes with edges i <-> i+1 of weight w."""
    if n < 1:
        raise InvalidSizeError(f"path graph needs at least one node, got {n}")
    if w <= 0:
        raise ValueError(f"edge weight must be positive, got {w}")
    tails = []
    heads = []
    for i in range(1, n):
        tails.extend((i, i + 1))
        heads.extend((i + 1, i))
    weights = np.full(len(tails), float(w))
    return WeightedGraph.from_edges(n, tails, heads, weights, symmetric_pattern=True)


def grid_graph(nx, ny, stencil=5):
    """Unit-weight lattice on nx-by-ny nodes.

    stencil=5 connects 4 axis neighbors; stencil=9 adds the diagonals.
    Node (x, y) has index (y-1)*nx + x.
    """
    if nx < 1 or ny < 1:
        raise InvalidSizeError(f"grid needs positive dimensions, got {nx}x{ny}")
    if stencil not in (5, 9):
        raise ValueError(f"stencil must be 5 or 9, got {stencil}")
    steps = [(1, 0), (0, 1)]
    if stencil == 9:
        steps += [(1, 1), (1, -1)]
    tails = []
    heads = []
    for y in range(1, ny + 1):
        for x in range(1, nx + 1):
            i = (y - 1) * nx + x
            for dx, dy in steps:
                xx, yy = x + dx, y + dy
                if 1 <= xx <= nx and 1 <= yy <= ny:
                    j = (yy - 1) * nx + xx
                    tails.extend((i, j))
                    heads.extend((j, i))
    weights = np.ones(len(tails))
    return WeightedGraph.from_edges(nx * ny, tails, heads, weights, symmetric_pattern=True)


def strength_to_distance(a, strength="abs-offdiag", padding=0.1):
    """Turn a sparse matrix into a distance-weighted graph.

    Off-diagonal nonzeros of ``a`` define edges. Each edge gets a strength
    (its absolute value, or 1 for the unit proxy), is padded so the graph of
    ``a`` stays connected wherever ``a`` has an entry, and the padded
    strength is inverted so that strong connections become short distances.

    Parameters
    ----------
    a : scipy sparse matrix
        Square matrix whose off-diagonal pattern defines the edges.
    strength : {"abs-offdiag", "unit"}
        Strength proxy for each edge.
    padding : float
        Positive padding added to every strength before inversion.

    Returns
    -------
    WeightedGraph
        Edge weights 1 / (strength + padding); diagonal dropped.
    """
    a = sp.csr_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise NotSquareError(f"matrix is {a.shape[0]}x{a.shape[1]}")
    if padding <= 0:
        raise ValueError(f"padding must be positive, got {padding}")
    if strength not in ("abs-offdiag", "unit"):
        raise ValueError(f"unknown strength proxy {strength!r}")
    coo = a.tocoo()
    off = coo.row != coo.col
    rows = coo.row[off]
    cols = coo.col[off]
    if strength == "abs-offdiag":
        w_hat = np.abs(coo.data[off])
    else:
        w_hat = np.ones(rows.shape[0])
    dist = 1.0 / (w_hat + padding)
    return WeightedGraph.from_edges(a.shape[0], rows + 1, cols + 1, dist)
