import numpy as np
import pytest

from lloydcluster import (
    balanced_lloyd_cluster,
    cluster_stats,
    compute_delta,
    energy_h,
    energy_h_delta,
    path_graph,
    state_from_membership,
)
from lloydcluster.metrics import InfiniteDistanceError

from conftest import random_connected_graph


class TestEnergyH:
    def test_simple_sum(self):
        assert energy_h([0.0, 1.0, 1.0, 0.0]) == 2.0

    def test_all_zero(self):
        assert energy_h(np.zeros(5)) == 0.0

    def test_worst_case_value(self):
        d = np.r_[np.zeros(10), np.arange(1.0, 21.0)]
        assert energy_h(d) == 2870.0

    def test_infinite_distance(self):
        with pytest.raises(InfiniteDistanceError):
            energy_h([0.0, np.inf])


class TestComputeDelta:
    def test_two_distinct_weights(self):
        g = path_graph(10)
        g.weights[0:2] = 2.0
        assert compute_delta(g) == (1.0 / 10.0) ** 2

    def test_uniform_weights_fallback(self):
        g = path_graph(30)
        assert compute_delta(g) == ((1.0 / 30.0) / 30.0) ** 2

    def test_three_distinct_weights(self):
        g = path_graph(4)
        g.weights[g.weights == 1.0] = 1.0
        w = g.weights
        # chain edges (1,2),(2,1),(2,3),(3,2),(3,4),(4,3)
        w[0] = w[1] = 1.0
        w[2] = w[3] = 1.25
        w[4] = w[5] = 2.0
        assert compute_delta(g) == (0.25 / 4.0) ** 2

    def test_identity_scaling(self):
        # the coefficient is (gap/n)^2, so delta * n^2 recovers gap^2
        g = path_graph(10)
        g.weights[0:2] = 1.5
        delta = compute_delta(g)
        assert np.isclose(delta * 10.0**2, 0.5**2, rtol=1e-15)


class TestEnergyHDelta:
    def test_with_sizes(self):
        assert energy_h_delta([0.0, 1.0, 1.0, 0.0], [2, 2], 0.01) == 2.0 + 0.01 * 8

    def test_zero_delta_reduces_to_h(self):
        d = [0.0, 1.0, 2.0]
        assert energy_h_delta(d, [3], 0.0) == energy_h(d)

    def test_single_node(self):
        assert energy_h_delta([0.0], [1], 0.25) == 0.25


class TestClusterStats:
    def test_two_pair_clusters(self):
        g = path_graph(4)
        st, paths = state_from_membership(
            g, np.array([0, 1, 1, 2, 2]), np.array([0, 1, 3])
        )
        stats = cluster_stats(g, st, paths)
        assert stats.diameters.tolist() == [1.0, 1.0]
        assert stats.sizes.tolist() == [2, 2]
        assert stats.diameter_std == 0.0
        assert stats.size_std == 0.0
        assert stats.zero_diameter_count == 0
        assert stats.energy == 2.0

    def test_identity_clustering(self):
        g = path_graph(4)
        st, paths = state_from_membership(
            g, np.array([0, 1, 2, 3, 4]), np.array([0, 1, 2, 3, 4])
        )
        stats = cluster_stats(g, st, paths)
        assert np.all(stats.diameters == 0.0)
        assert stats.zero_diameter_count == 4

    def test_unequal_split(self):
        g = path_graph(5)
        st, paths = state_from_membership(
            g, np.array([0, 1, 1, 1, 2, 2]), np.array([0, 2, 4])
        )
        stats = cluster_stats(g, st, paths)
        assert stats.diameters.tolist() == [2.0, 1.0]
        assert stats.size_std == 0.5

    def test_energy_consistent_with_tables(self):
        rng = np.random.default_rng(83)
        for _ in range(10):
            n = int(rng.integers(3, 40))
            g = random_connected_graph(rng, n)
            k = int(rng.integers(1, n + 1))
            centers = np.sort(rng.choice(n, size=k, replace=False)) + 1
            st, paths = balanced_lloyd_cluster(g, centers)
            stats = cluster_stats(g, st, paths)
            total = 0.0
            for a in range(1, k + 1):
                row = paths.local_index[st.c[a]]
                total += float((paths.distances(a)[row, :] ** 2).sum())
            assert np.isclose(stats.energy, total, rtol=1e-12)

    def test_to_dict_is_json_ready(self):
        import json

        g = path_graph(4)
        st, paths = state_from_membership(
            g, np.array([0, 1, 1, 2, 2]), np.array([0, 1, 3])
        )
        payload = cluster_stats(g, st, paths).to_dict()
        text = json.dumps(payload, sort_keys=True)
        assert json.loads(text)["energy"] == 2.0
