import networkx as nx
import numpy as np
import pytest
import scipy.sparse as sp
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from rcckit.estimators import CoreDecomposer, LabelPropagation, RccDetector, RccModifier
from rcckit.generators import clique_star, ring_of_cliques
from rcckit.graph import EmptyGraphError, Graph
from rcckit.utils.validation import check_fraction, check_graph, check_positive_int


def test_check_graph_accepts_common_inputs(tmp_path):
    g = Graph.from_edges([(0, 1), (1, 2)])
    assert check_graph(g) is g
    assert check_graph(np.array([[0, 1], [1, 2]])) == g
    assert check_graph(sp.csr_matrix(g.adjacency_matrix())) == g
    assert check_graph(g.adjacency_matrix().toarray()) == g
    assert check_graph(nx.path_graph(3)) == g
    path = tmp_path / "e.txt"
    path.write_text("0 1\n1 2\n")
    assert check_graph(str(path)) == g


def test_check_graph_rejects_bad_inputs():
    with pytest.raises(ValueError):
        check_graph(np.array([[0, 1, 0], [0, 0, 1], [0, 1, 0]]))  # asymmetric adjacency
    with pytest.raises(TypeError):
        check_graph(np.array([[0.5, 1.0]]))
    with pytest.raises(EmptyGraphError):
        check_graph(Graph.empty(0))


def test_scalar_checks():
    assert check_positive_int(3, "h") == 3
    with pytest.raises(ValueError):
        check_positive_int(True, "h")
    with pytest.raises(ValueError):
        check_fraction(1.0, "gamma")
    assert check_fraction(1.0, "gamma", closed_high=True) == 1.0


def test_core_decomposer():
    g = clique_star(20, 10, 5, 1, seed=0)
    est = CoreDecomposer().fit(g)
    assert est.max_core_ == 19
    assert est.transform(g).shape == (70, 1)
    assert np.array_equal(est.fit_transform(g).ravel(), est.core_number_)


def test_detector_fit_and_predict():
    det = RccDetector().fit(clique_star(20, 30, 4, 1, seed=0))
    assert det.has_rcc_ and len(det.rcc_members_) == 20
    ring = ring_of_cliques([10] + [4, 5, 6, 3, 7, 4, 5, 3, 6, 4, 5, 3, 4, 6], 1, seed=0)
    assert det.predict([clique_star(20, 30, 4, 1, seed=1), ring]).tolist() == [True, False]
    assert clone(det).get_params() == det.get_params()
    assert RccDetector(strict=True).predict(clique_star(20, 30, 4, 1, seed=0)).tolist() == [False]


def test_modifier_fit_transform_matches_plan():
    g = clique_star(20, 10, 5, 1, seed=0)
    mod = RccModifier(h=30, gamma=0.2, mode="remove", random_state=3)
    out = mod.fit_transform(g)
    assert out == mod.transform(g)
    assert g.edge_count - out.edge_count == len(mod.plan_.chosen_edges)
    with pytest.raises(NotFittedError):
        RccModifier().transform(g)
    with pytest.raises(ValueError):
        RccModifier(h=1).fit(g)


def test_label_propagation_estimator():
    est = LabelPropagation(random_state=2)
    labels = est.fit_predict(clique_star(20, 10, 5, 1, seed=0))
    assert est.n_communities_ == 11 and len(labels) == 70
