import numpy as np
import pytest
from scipy.sparse.csgraph import dijkstra

from lloydcluster import (
    WeightedGraph,
    bellman_ford,
    energy_h,
    grid_graph,
    lloyd_cluster,
    most_interior_nodes,
    path_graph,
    validate_clustering,
)
from lloydcluster.errors import EmptySeedSetError, NoBorderWarning, UnreachableNodeError
from lloydcluster.lloyd import _bellman_ford

from conftest import random_connected_graph


class TestBellmanFord:
    def test_path4_two_seeds(self):
        g = path_graph(4)
        m, d = bellman_ford(g, [1, 4])
        assert m[1:].tolist() == [1, 1, 2, 2]
        assert d[1:].tolist() == [0, 1, 1, 0]

    def test_every_node_a_seed(self):
        g = path_graph(3)
        m, d = bellman_ford(g, [1, 2, 3])
        assert m[1:].tolist() == [1, 2, 3]
        assert d[1:].tolist() == [0, 0, 0]

    def test_worst_case_energy(self):
        g = path_graph(30)
        _, d = bellman_ford(g, list(range(1, 11)))
        assert d[11:31].tolist() == list(range(1, 21))
        assert energy_h(d[1:]) == 2870.0

    def test_empty_seed_set(self):
        with pytest.raises(EmptySeedSetError):
            bellman_ford(path_graph(3), [])

    def test_duplicate_seeds(self):
        with pytest.raises(ValueError):
            bellman_ford(path_graph(3), [1, 1])

    def test_unreachable_node(self):
        # two disjoint chains: 1-2 and 3-4
        g = WeightedGraph.from_edges(4, [1, 2, 3, 4], [2, 1, 4, 3], np.ones(4))
        with pytest.raises(UnreachableNodeError) as err:
            bellman_ford(g, [1])
        assert err.value.node in (3, 4)

    def test_sweep_count_bounded(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(2, 40))
            g = random_connected_graph(rng, n)
            seeds = np.sort(rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False)) + 1
            _, _, sweeps = _bellman_ford(g, seeds)
            assert sweeps <= n

    def test_assignment_clusters_connected(self):
        # every nearest-seed region is connected through its own nodes
        rng = np.random.default_rng(97)
        for _ in range(15):
            n = int(rng.integers(2, 40))
            g = random_connected_graph(rng, n)
            k = int(rng.integers(1, n + 1))
            seeds = np.sort(rng.choice(n, size=k, replace=False)) + 1
            m, _ = bellman_ford(g, seeds)
            c = np.zeros(k + 1, dtype=np.int64)
            c[1:] = seeds
            assert validate_clustering(g, m, c)

    def test_directed_distances(self):
        g = WeightedGraph.from_edges(4, [1, 2, 3, 4], [2, 3, 4, 1], np.ones(4))
        _, d = bellman_ford(g, [1])
        assert d[1:].tolist() == [0, 1, 2, 3]

    def test_matches_dijkstra_oracle(self):
        rng = np.random.default_rng(123)
        for _ in range(30):
            n = int(rng.integers(2, 50))
            g = random_connected_graph(rng, n)
            k = int(rng.integers(1, n + 1))
            seeds = np.sort(rng.choice(n, size=k, replace=False)) + 1
            _, d = bellman_ford(g, seeds)
            ref = dijkstra(g.to_scipy(), indices=seeds - 1, min_only=True)
            assert np.array_equal(d[1:], ref)


class TestMostInterior:
    def test_path5(self):
        g = path_graph(5)
        c = most_interior_nodes(g, np.array([0, 1, 1, 1, 2, 2]))
        assert c[1:].tolist() == [1, 5]

    def test_all_border(self):
        g = path_graph(2)
        c = most_interior_nodes(g, np.array([0, 1, 2]))
        assert c[1:].tolist() == [1, 2]

    def test_grid_all_border(self):
        g = grid_graph(2, 2)
        c = most_interior_nodes(g, np.array([0, 1, 1, 2, 2]))
        assert c[1:].tolist() == [2, 4]

    def test_single_cluster_warns(self):
        g = path_graph(3)
        with pytest.warns(NoBorderWarning):
            c = most_interior_nodes(g, np.array([0, 1, 1, 1]))
        assert c[1:].tolist() == [3]


class TestLloydCluster:
    def test_path4_converges(self):
        g = path_graph(4)
        m, c = lloyd_cluster(g, [1, 4], t_max=5)
        assert m[1:].tolist() == [1, 1, 2, 2]
        assert validate_clustering(g, m, c)

    def test_identity_clustering(self):
        g = path_graph(5)
        m, c = lloyd_cluster(g, [1, 2, 3, 4, 5], t_max=3)
        assert m[1:].tolist() == [1, 2, 3, 4, 5]
        assert c[1:].tolist() == [1, 2, 3, 4, 5]

    def test_worst_case_plateaus_above_optimum(self):
        g = path_graph(30)
        m, c = lloyd_cluster(g, list(range(1, 11)), t_max=100)
        _, d = bellman_ford(g, c[1:])
        h = energy_h(d[1:])
        assert h < 2870.0
        assert h > 20.0

    def test_fixed_point(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            n = int(rng.integers(4, 30))
            g = random_connected_graph(rng, n)
            k = int(rng.integers(1, max(2, n // 3)))
            seeds = np.sort(rng.choice(n, size=k, replace=False)) + 1
            m, c = lloyd_cluster(g, seeds, t_max=50)
            m2, c2 = lloyd_cluster(g, c[1:], t_max=50)
            assert np.array_equal(m, m2)
            assert np.array_equal(c, c2)

    def test_clusters_connected(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(4, 40))
            g = random_connected_graph(rng, n)
            k = int(rng.integers(1, n + 1))
            seeds = np.sort(rng.choice(n, size=k, replace=False)) + 1
            m, c = lloyd_cluster(g, seeds, t_max=10)
            assert validate_clustering(g, m, c)
