import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from lloydcluster import (
    WeightedGraph,
    grid_graph,
    path_graph,
    strength_to_distance,
    validate_clustering,
    validate_graph,
)
from lloydcluster.errors import (
    InvalidSizeError,
    MalformedOffsetsError,
    NegativeWeightError,
    NotSquareError,
    SelfLoopError,
)


class TestWeightedGraph:
    def test_from_edges_sums_duplicates(self):
        g = WeightedGraph.from_edges(2, [1, 1, 2], [2, 2, 1], [1.0, 2.0, 3.0])
        assert g.n_edge == 2
        cols, w = g.neighbors(1)
        assert list(cols) == [2]
        assert w[0] == 3.0

    def test_neighbors_slices(self):
        g = path_graph(4)
        cols, w = g.neighbors(2)
        assert sorted(cols.tolist()) == [1, 3]
        assert np.all(w == 1.0)

    def test_scipy_round_trip(self):
        g = path_graph(5, 2.0)
        a = g.to_scipy()
        g2 = WeightedGraph.from_scipy(a)
        assert g2.n_edge == g.n_edge
        assert np.array_equal(g2.col_indices, g.col_indices)

    def test_edge_csv(self, tmp_path):
        g = path_graph(3)
        out = tmp_path / "edges.csv"
        g.to_edge_csv(out)
        lines = out.read_text().strip().splitlines()
        assert len(lines) == g.n_edge
        assert lines[0] == "1,2,1.0"


class TestValidateGraph:
    def test_valid_path(self):
        validate_graph(path_graph(4))

    def test_negative_weight(self):
        g = WeightedGraph.from_edges(3, [1, 2], [2, 1], [1.0, 1.0])
        g.weights[0] = -1.0
        with pytest.raises(NegativeWeightError) as err:
            validate_graph(g)
        assert (err.value.i, err.value.j) == (1, 2)

    def test_zero_weight_rejected(self):
        g = path_graph(3)
        g.weights[0] = 0.0
        with pytest.raises(NegativeWeightError):
            validate_graph(g)

    def test_self_loop(self):
        g = path_graph(4)
        # point an edge of node 3 back at itself
        lo = g.row_offsets[2]
        g.col_indices[lo] = 3
        with pytest.raises(SelfLoopError) as err:
            validate_graph(g)
        assert err.value.i == 3

    def test_malformed_offsets(self):
        g = path_graph(4)
        g.row_offsets = g.row_offsets[:-1]
        with pytest.raises(MalformedOffsetsError):
            validate_graph(g)

    def test_asymmetric_pattern_flagged(self):
        g = WeightedGraph.from_edges(3, [1], [2], [1.0], symmetric_pattern=True)
        with pytest.raises(MalformedOffsetsError):
            validate_graph(g)


class TestValidateClustering:
    def test_valid(self):
        g = path_graph(4)
        report = validate_clustering(g, np.array([0, 1, 1, 2, 2]), np.array([0, 1, 3]))
        assert report

    def test_disconnected_cluster(self):
        g = path_graph(4)
        report = validate_clustering(g, np.array([0, 1, 2, 1, 2]), np.array([0, 1, 2]))
        assert not report
        assert report.violated_property == 2
        assert report.cluster == 1

    def test_center_outside_cluster(self):
        g = path_graph(4)
        report = validate_clustering(g, np.array([0, 1, 1, 2, 2]), np.array([0, 3, 4]))
        assert not report
        assert report.violated_property == 3

    def test_membership_out_of_range(self):
        g = path_graph(4)
        report = validate_clustering(g, np.array([0, 1, 0, 2, 2]), np.array([0, 1, 3]))
        assert not report
        assert report.violated_property == 1

    def test_directed_cycle_is_strongly_connected(self):
        g = WeightedGraph.from_edges(4, [1, 2, 3, 4], [2, 3, 4, 1], np.ones(4))
        assert not g.symmetric_pattern
        report = validate_clustering(g, np.array([0, 1, 1, 1, 1]), np.array([0, 1]))
        assert report

    def test_directed_one_way_chain_fails(self):
        g = WeightedGraph.from_edges(2, [1], [2], [1.0])
        report = validate_clustering(g, np.array([0, 1, 1]), np.array([0, 1]))
        assert not report
        assert report.violated_property == 2


class TestGenerators:
    def test_path_30(self):
        g = path_graph(30, 1.0)
        assert g.n_node == 30
        assert g.n_edge == 58

    def test_path_singleton(self):
        g = path_graph(1)
        assert g.n_node == 1
        assert g.n_edge == 0

    def test_path_weights(self):
        g = path_graph(4, 2.0)
        assert np.all(g.weights == 2.0)

    def test_path_invalid(self):
        with pytest.raises(InvalidSizeError):
            path_graph(0)

    def test_grid_2x2(self):
        g = grid_graph(2, 2)
        assert g.n_node == 4
        assert g.n_edge == 8

    def test_grid_64(self):
        assert grid_graph(64, 64).n_node == 4096

    def test_grid_degenerate_row(self):
        g = grid_graph(3, 1)
        p = path_graph(3)
        assert g.n_edge == p.n_edge
        assert np.array_equal(g.col_indices, p.col_indices)

    def test_grid_9point(self):
        g = grid_graph(2, 2, stencil=9)
        assert g.n_edge == 12  # 4 lattice + 2 diagonal undirected edges

    def test_grid_invalid(self):
        with pytest.raises(InvalidSizeError):
            grid_graph(0, 4)

    @pytest.mark.parametrize("g", [path_graph(7), grid_graph(4, 3)])
    def test_generators_symmetric(self, g):
        a = g.to_scipy()
        assert (a != a.T).nnz == 0


class TestStrengthToDistance:
    def test_laplacian_abs(self):
        a = sp.diags([-1.0, 2.0, -1.0], [-1, 0, 1], shape=(3, 3)).tocsr()
        g = strength_to_distance(a, "abs-offdiag", 0.1)
        assert g.n_edge == 4
        assert np.allclose(g.weights, 1.0 / 1.1)

    def test_unit_proxy(self):
        a = sp.diags([-3.0, 2.0, -0.5], [-1, 0, 1], shape=(4, 4)).tocsr()
        g = strength_to_distance(a, "unit", 0.1)
        assert np.allclose(g.weights, 1.0 / 1.1)

    def test_diagonal_only(self):
        g = strength_to_distance(sp.eye(3, format="csr"))
        assert g.n_edge == 0

    def test_asymmetric_pattern_detected(self):
        a = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
        g = strength_to_distance(a)
        assert not g.symmetric_pattern
        g2 = strength_to_distance(a + a.T)
        assert g2.symmetric_pattern

    def test_not_square(self):
        with pytest.raises(NotSquareError):
            strength_to_distance(sp.csr_matrix((2, 3)))

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 12), st.integers(0, 10_000))
    def test_output_always_validates(self, n, seed):
        rng = np.random.default_rng(seed)
        dense = rng.uniform(-2, 2, size=(n, n))
        dense[rng.uniform(size=(n, n)) < 0.5] = 0.0
        a = sp.csr_matrix(dense)
        g = strength_to_distance(a)
        validate_graph(g)
        assert np.all(np.isfinite(g.weights))
        assert np.all(g.weights > 0)
