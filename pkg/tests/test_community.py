from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import graphs
from rcckit.community import core_community_distribution, detect_communities, supervertex_reduction
from rcckit.cores import core_numbers
from rcckit.generators import clique_star, ring_of_cliques
from rcckit.graph import Graph, connected_components


def clique(nodes):
    return list(combinations(nodes, 2))


def modularity(g, labels):
    m = g.edge_count
    deg = g.degrees
    q = 0.0
    for u, v in g.edges().tolist():
        q += 2 * (labels[u] == labels[v])
    for c in set(labels.tolist()):
        q -= deg[labels == c].sum() ** 2 / (2 * m)
    return q / (2 * m)


def test_two_cliques_joined_by_edge():
    g = Graph.from_edges(clique(range(5)) + clique(range(5, 10)) + [(4, 5)])
    p = detect_communities(g, seed=0)
    assert p.count == 2 and modularity(g, p.labels) > 0


def test_single_and_disjoint_cliques():
    assert detect_communities(Graph.from_edges(clique(range(6))), seed=1).count == 1
    assert detect_communities(Graph.from_edges(clique(range(4)) + clique(range(4, 8))), seed=1).count == 2


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=1, max_n=30))
def test_partition_covers_dense_connected_deterministic(g):
    p = detect_communities(g, seed=3)
    assert len(p.labels) == g.node_count
    assert sorted(set(p.labels.tolist())) == list(range(p.count))
    for c in range(p.count):
        sub, _ = g.subgraph(p.members(c))
        assert len(set(connected_components(sub).tolist())) == 1
    assert np.array_equal(detect_communities(g, seed=3).labels, p.labels)


def test_ring_core_in_one_community():
    g = ring_of_cliques([10, 4, 5, 4, 6, 3, 5, 4, 3, 5], 1, seed=0)
    rows = core_community_distribution(g, detect_communities(g, seed=0))
    assert len(rows) == 1 and rows[0]["core_members"] == 10


def test_single_clique_single_bar():
    g = Graph.from_edges(clique(range(7)))
    rows = core_community_distribution(g, detect_communities(g))
    assert rows == [{"community": 0, "size": 7, "core_members": 7}]


def test_distribution_ordered_by_size():
    g = clique_star(20, 10, 5, 1, seed=0)
    rows = core_community_distribution(g, detect_communities(g))
    assert [r["size"] for r in rows] == sorted((r["size"] for r in rows), reverse=True)


def best_supervertex(sg):
    return max((n for n in sg.nodes if n["size"]), key=lambda n: n["mean_closeness"])["kind"]


def test_core_supervertex_most_central_on_clique_star():
    g = clique_star(20, 30, 4, 1, seed=2)
    assert best_supervertex(supervertex_reduction(g, detect_communities(g))) == "core"


def test_core_supervertex_not_most_central_on_ring():
    sizes = [10] + np.random.default_rng(2).integers(3, 8, size=14).tolist()
    g = ring_of_cliques(sizes, 1, seed=2)
    assert best_supervertex(supervertex_reduction(g, detect_communities(g))) == "community"


def test_single_community_gives_two_supervertices():
    # one community: a clique with a tail; core = the clique
    g = Graph.from_edges(clique(range(5)) + [(4, 5)])
    p = detect_communities(g)
    assert p.count == 1
    sg = supervertex_reduction(g, p)
    assert len(sg.nodes) == 2 and sg.edges == ((0, 1),)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=25))
def test_reduction_invariants(g):
    if g.edge_count == 0:
        return
    p = detect_communities(g)
    d = core_numbers(g)
    sg = supervertex_reduction(g, p, d)
    assert len(sg.nodes) == p.count + 1
    assert all(a < b for a, b in sg.edges)
    core_id = p.count
    assert sg.nodes[core_id]["size"] == len(d.shell(d.max_core))
    assert sum(n["size"] for n in sg.nodes) == g.node_count
    doc = sg.to_node_link()
    assert len(doc["links"]) == len(sg.edges)
