"""scikit-learn style wrappers: graphs in, fitted attributes out."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from rcckit.community import detect_communities
from rcckit.cores import core_numbers, shell_buckets
from rcckit.graph import Graph
from rcckit.modifier import modify_rcc
from rcckit.rcc import RccCriteria, detect_rcc
from rcckit.utils.validation import check_fraction, check_graph, check_positive_int

__all__ = ["CoreDecomposer", "RccDetector", "RccModifier", "LabelPropagation"]


def _graph_list(X) -> list[Graph]:
    if isinstance(X, (list, tuple)):
        return [check_graph(x) for x in X]
    return [check_graph(X)]


class CoreDecomposer(TransformerMixin, BaseEstimator):
    """Core numbers of a graph.

    ``transform`` returns the core number of every vertex of the given graph
    as a column vector, so it composes with other per-vertex features.
    """

    def fit(self, X, y=None):
        g = check_graph(X)
        self.decomposition_ = core_numbers(g)
        self.core_number_ = self.decomposition_.core_number
        self.max_core_ = self.decomposition_.max_core
        self.buckets_ = shell_buckets(self.decomposition_)
        self.n_vertices_ = g.node_count
        return self

    def transform(self, X):
        check_is_fitted(self, "decomposition_")
        return core_numbers(check_graph(X)).core_number.reshape(-1, 1)


class RccDetector(BaseEstimator):
    """Rich-centrality-club detector.

    ``fit`` inspects one graph and stores ``verdict_``; ``predict`` takes a
    graph or a list of graphs and returns one boolean per graph.
    """

    def __init__(self, eigengap_threshold: float = 0.5, distance_threshold: float = 4.0,
                 target_core_density: float = 0.8, strict: bool = False, threads=None):
        self.eigengap_threshold = eigengap_threshold
        self.distance_threshold = distance_threshold
        self.target_core_density = target_core_density
        self.strict = strict
        self.threads = threads

    def _criteria(self) -> RccCriteria:
        return RccCriteria(self.eigengap_threshold, self.distance_threshold,
                           self.target_core_density, self.strict)

    def fit(self, X, y=None):
        self.verdict_ = detect_rcc(check_graph(X), self._criteria(), self.threads)
        self.has_rcc_ = self.verdict_.has_rcc
        self.rcc_members_ = np.array(sorted(self.verdict_.rcc_members), dtype=np.int64)
        self.profile_ = self.verdict_.profile
        return self

    def predict(self, X) -> np.ndarray:
        crit = self._criteria()
        return np.array([detect_rcc(g, crit, self.threads).has_rcc for g in _graph_list(X)])


class RccModifier(TransformerMixin, BaseEstimator):
    """Insert or remove a club among the top-``h`` degree vertices.

    ``fit`` draws the edge plan from the fitted graph; ``transform`` applies
    that same plan to a graph, which must contain the planned vertices.
    """

    def __init__(self, h: int = 30, gamma: float = 0.2, mode: str = "insert", random_state=None):
        self.h = h
        self.gamma = gamma
        self.mode = mode
        self.random_state = random_state

    def fit(self, X, y=None):
        check_positive_int(self.h, "h", minimum=2)
        check_fraction(self.gamma, "gamma", closed_high=True)
        g = check_graph(X)
        self.modified_, self.plan_ = modify_rcc(g, self.h, self.gamma, self.mode, self.random_state)
        self.top_vertices_ = np.array(self.plan_.top_vertices, dtype=np.int64)
        return self

    def transform(self, X) -> Graph:
        check_is_fitted(self, "plan_")
        g = check_graph(X)
        edges = self.plan_.chosen_edges
        if not edges:
            return g
        if max(max(e) for e in edges) >= g.node_count:
            raise ValueError("graph is smaller than the one the plan was drawn from")
        return g.with_edges_added(edges) if self.mode == "insert" else g.with_edges_removed(edges)

    def fit_transform(self, X, y=None, **fit_params) -> Graph:
        return self.fit(X).modified_


class LabelPropagation(ClusterMixin, BaseEstimator):
    """Connected label-propagation communities; ``labels_`` holds one id per vertex."""

    def __init__(self, max_iter: int = 100, random_state=0):
        self.max_iter = max_iter
        self.random_state = random_state

    def fit(self, X, y=None):
        self.partition_ = detect_communities(check_graph(X), self.random_state, self.max_iter)
        self.labels_ = self.partition_.labels
        self.n_communities_ = self.partition_.count
        return self
