"""Energy functionals and cluster-quality statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "energy_h",
    "compute_delta",
    "energy_h_delta",
    "cluster_stats",
    "ClusterStats",
    "InfiniteDistanceError",
]


class InfiniteDistanceError(ValueError):
    """Energy is undefined while some node is unassigned (infinite distance)."""


def energy_h(d):
    """Sum of squared center distances over a plain per-node vector."""
    d = np.asarray(d, dtype=np.float64)
    if not np.all(np.isfinite(d)):
        node = int(np.nonzero(~np.isfinite(d))[0][0]) + 1
        raise InfiniteDistanceError(f"node {node} has non-finite distance")
    return float(np.dot(d, d))


def compute_delta(g):
    """Size-term coefficient for the balanced energy.

    Computed as (gap / n_node)^2 where gap is the smallest difference
    between distinct edge weights; when all weights are equal the gap falls
    back to (min weight) / n_node so the coefficient stays positive but
    small.
    """
    distinct = np.unique(g.weights)
    if distinct.shape[0] >= 2:
        gap = float(np.diff(distinct).min())
    elif distinct.shape[0] == 1:
        gap = float(distinct[0]) / g.n_node
    else:
        gap = 1.0 / g.n_node
    return (gap / g.n_node) ** 2


def energy_h_delta(d, s, delta):
    """Balanced energy: sum of squared distances plus delta times sum of
    squared cluster sizes."""
    h = energy_h(d)
    s = np.asarray(s, dtype=np.float64)
    return h + float(delta) * float(np.dot(s, s))


def _raw_energies(d, s, delta):
    # inf-tolerant variants used by trace hooks mid-run
    d = np.asarray(d[1:], dtype=np.float64)
    h = float(np.dot(d, d)) if np.all(np.isfinite(d)) else np.inf
    s = np.asarray(s[1:], dtype=np.float64)
    return h, h + float(delta) * float(np.dot(s, s))


@dataclass
class ClusterStats:
    """Per-clustering quality summary."""

    diameters: np.ndarray
    sizes: np.ndarray
    zero_diameter_count: int
    diameter_std: float
    size_std: float
    energy: float
    energy_delta: float
    delta: float

    def to_dict(self):
        """JSON-ready dictionary with stable field names."""
        return {
            "diameters": [float(x) for x in self.diameters],
            "sizes": [int(x) for x in self.sizes],
            "zero_diameter_count": int(self.zero_diameter_count),
            "diameter_std": float(self.diameter_std),
            "size_std": float(self.size_std),
            "energy": float(self.energy),
            "energy_delta": float(self.energy_delta),
            "delta": float(self.delta),
        }


def cluster_stats(g, st, paths):
    """Compute diameters, size statistics, and both energies for a
    quiescent clustering state with current path tables."""
    n_cluster = st.n_cluster
    diameters = np.empty(n_cluster)
    sizes = np.empty(n_cluster, dtype=np.int64)
    for a in range(1, n_cluster + 1):
        diameters[a - 1] = paths.diameter(a)
        sizes[a - 1] = paths.size(a)
    delta = compute_delta(g)
    h = energy_h(st.distances)
    h_delta = energy_h_delta(st.distances, st.sizes, delta)
    return ClusterStats(
        diameters=diameters,
        sizes=sizes,
        zero_diameter_count=int(np.count_nonzero(diameters == 0.0)),
        diameter_std=float(np.std(diameters)),
        size_std=float(np.std(sizes)),
        energy=h,
        energy_delta=h_delta,
        delta=delta,
    )
