import math
import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import cheeger_oracle, lambda2_dense, random_edges
from rcckit.cores import core_numbers
from rcckit.generators import clique_star, ring_of_cliques
from rcckit.graph import Graph, connected_components
from rcckit.spectral import (
    UndefinedEigengap,
    cheeger_constant,
    eigengap,
    normalized_laplacian,
    shell_eigengap_profile,
)


def complete(n):
    return Graph.from_edges(list(combinations(range(n), 2)))


def test_laplacian_examples():
    lap, _ = normalized_laplacian(Graph.from_edges([(0, 1)]))
    assert np.allclose(lap.toarray(), [[1, -1], [-1, 1]])
    lap, _ = normalized_laplacian(complete(3))
    assert np.allclose(lap.toarray(), [[1, -.5, -.5], [-.5, 1, -.5], [-.5, -.5, 1]])
    lap, _ = normalized_laplacian(Graph.from_edges([(0, 1), (0, 2), (0, 3)]))
    assert np.allclose(lap.toarray()[0, 1:], -1 / math.sqrt(3))


def test_isolated_vertices_removed():
    lap, kept = normalized_laplacian(Graph.from_edges([(0, 1), (1, 2)], n=5))
    assert lap.shape == (3, 3) and kept.tolist() == [0, 1, 2]
    assert eigengap(Graph.from_edges([(0, 1), (1, 2)], n=5)).isolated_removed == 2


def test_small_examples():
    assert eigengap(complete(4)).lambda2 == pytest.approx(4 / 3, abs=1e-12)
    assert eigengap(Graph.from_edges([(0, 1), (1, 2)])).lambda2 == pytest.approx(1.0, abs=1e-12)
    res = eigengap(Graph.from_edges([(0, 1), (2, 3)]))
    assert res.lambda2 == 0.0 and res.component_count == 2


def test_too_small_is_undefined():
    with pytest.raises(UndefinedEigengap):
        eigengap(Graph.empty(3))


def test_iterative_solver_matches_dense():
    rng = random.Random(2)
    for n, p in [(300, 0.03), (150, 0.1)]:
        edges = random_edges(rng, n, p)
        g = Graph.from_edges(edges, n=n)
        if len(set(connected_components(g).tolist())) != 1:
            continue
        assert eigengap(g, dense_threshold=0).lambda2 == pytest.approx(lambda2_dense(n, edges), abs=1e-8)


def test_large_shell_uses_iterative_path():
    g = ring_of_cliques([30] * 20, 1, seed=1)  # 600 vertices, above the dense threshold
    e = [tuple(x) for x in g.edges().tolist()]
    assert eigengap(g).lambda2 == pytest.approx(lambda2_dense(g.node_count, e), abs=1e-8)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=3, max_n=40))
def test_lambda2_agrees_with_dense_oracle(g):
    if g.edge_count == 0 or int((g.degrees > 0).sum()) < 2:
        return
    edges = [tuple(e) for e in g.edges().tolist()]
    keep = np.flatnonzero(g.degrees > 0)
    sub, _ = g.subgraph(keep)
    connected = len(set(connected_components(sub).tolist())) == 1
    lam = eigengap(g).lambda2
    if connected:
        assert lam == pytest.approx(lambda2_dense(g.node_count, edges), abs=1e-8)
    else:
        assert lam == 0.0


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=25))
def test_spectrum_in_range_with_known_null_vector(g):
    if g.edge_count == 0:
        return
    lap, kept = normalized_laplacian(g)
    vals = np.linalg.eigvalsh(lap.toarray())
    assert vals.min() > -1e-8 and vals.max() < 2 + 1e-8
    null = np.sqrt(g.degrees[kept].astype(float))
    assert np.allclose(lap @ null, 0, atol=1e-8)


def test_cheeger_sandwich_small_graphs():
    rng = random.Random(4)
    checked = 0
    while checked < 30:
        n = rng.randint(3, 9)
        edges = random_edges(rng, n, rng.uniform(0.3, 0.8))
        g = Graph.from_edges(edges, n=n)
        if g.degrees.min() == 0 or len(set(connected_components(g).tolist())) != 1:
            continue
        lam = eigengap(g).lambda2
        h = cheeger_constant(g)
        assert h == pytest.approx(cheeger_oracle(n, edges))
        assert lam / 2 - 1e-12 <= h <= math.sqrt(2 * lam) + 1e-12
        checked += 1


@settings(max_examples=30, deadline=None)
@given(graphs(min_n=3, max_n=16), st.randoms(use_true_random=False))
def test_lambda2_permutation_invariant(g, rnd):
    if int((g.degrees > 0).sum()) < 2:
        return
    perm = list(range(g.node_count))
    rnd.shuffle(perm)
    assert eigengap(g.relabel(perm)).lambda2 == pytest.approx(eigengap(g).lambda2, abs=1e-10)


def test_profile_direction_on_clique_star():
    g = clique_star(20, 10, 5, 1, seed=0)
    prof = shell_eigengap_profile(g, core_numbers(g))
    assert prof.buckets["inner"][0] > prof.buckets["outer"][0]


def test_profile_ring_outer_drops_below_half():
    sizes = [10] + np.random.default_rng(0).integers(3, 8, size=14).tolist()
    g = ring_of_cliques(sizes, 1, seed=0)
    prof = shell_eigengap_profile(g, core_numbers(g))
    assert prof.buckets["outer"][0] < 0.5


def test_single_clique_profile():
    prof = shell_eigengap_profile(complete(7), core_numbers(complete(7)))
    assert list(prof.buckets) == ["inner"]
    assert prof.shells[0].lambda2 == pytest.approx(7 / 6, abs=1e-12)


def test_tiny_shells_excluded():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0), (3, 4)])
    prof = shell_eigengap_profile(g, core_numbers(g))
    assert 1 in prof.excluded
