import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import core_numbers_by_removal, random_edges
from rcckit.cores import EmptyShellError, core_numbers, k_core, shell_buckets, shell_subgraph
from rcckit.generators import clique_star
from rcckit.graph import Graph


def test_k4_pendant_core_numbers(k4_pendant):
    assert core_numbers(k4_pendant).core_number.tolist() == [3, 3, 3, 3, 1]


def test_cycle_is_two_core():
    c5 = Graph.from_edges([(i, (i + 1) % 5) for i in range(5)])
    assert core_numbers(c5).core_number.tolist() == [2] * 5


def test_random_graphs_match_removal_oracle():
    rng = random.Random(11)
    for _ in range(100):
        edges = random_edges(rng, 40, 0.15)
        g = Graph.from_edges(edges, n=40)
        assert core_numbers(g).core_number.tolist() == core_numbers_by_removal(40, edges)


def test_k_core_examples(k4_pendant):
    d = core_numbers(k4_pendant)
    assert k_core(d, 3).tolist() == [0, 1, 2, 3]
    assert k_core(d, 1).tolist() == [0, 1, 2, 3, 4]


def test_max_core_of_clique_star_is_hub():
    g = clique_star(20, 10, 5, 1, seed=0)
    d = core_numbers(g)
    assert d.max_core == 19
    assert k_core(d, 19).tolist() == list(range(20))


def test_shell_subgraph_examples(k4_pendant):
    d = core_numbers(k4_pendant)
    s1 = shell_subgraph(k4_pendant, d, 1)
    assert s1.members.tolist() == [0, 4] and s1.n_k == 2 and s1.d_k == 1.0
    s3 = shell_subgraph(k4_pendant, d, 3)
    assert s3.n_k == 5 and s3.d_k == pytest.approx(14 / 5)
    c5 = Graph.from_edges([(i, (i + 1) % 5) for i in range(5)])
    s2 = shell_subgraph(c5, core_numbers(c5), 2)
    assert s2.graph == c5


def test_incident_edges_drop_neighbour_to_neighbour_edges():
    # shell 1 = {5}, attached to two adjacent hub vertices
    g = Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (3, 0), (1, 3), (5, 0)])
    d = core_numbers(g)
    induced = shell_subgraph(g, d, 1, edges="induced")
    incident = shell_subgraph(g, d, 1, edges="incident")
    assert induced.graph.edge_count == 1 and incident.graph.edge_count == 1
    g2 = g.with_edges_added([(5, 1)])
    d2 = core_numbers(g2)
    k = int(d2.core_number[5])
    assert shell_subgraph(g2, d2, k, edges="induced").graph.edge_count == 3
    assert shell_subgraph(g2, d2, k, edges="incident").graph.edge_count == 2


def test_empty_shell_raises(k4_pendant):
    with pytest.raises(EmptyShellError):
        shell_subgraph(k4_pendant, core_numbers(k4_pendant), 2)


@pytest.mark.parametrize("s,sizes", [(8, (2, 2, 4)), (1, (1, 0, 0)), (20, (5, 5, 10)), (3, (1, 1, 1)),
                                     (5, (2, 2, 1))])
def test_bucket_sizes(s, sizes):
    b = shell_buckets(list(range(1, s + 1)))
    assert (len(b.inner), len(b.mid), len(b.outer)) == sizes
    assert b.inner == tuple(range(s, s - sizes[0], -1))


def test_two_shells_split_inner_and_outer():
    b = shell_buckets([3, 1])
    assert (b.inner, b.mid, b.outer, b.degenerate) == ((3,), (), (1,), True)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=25))
def test_nesting_and_shell_reconstruction(g):
    d = core_numbers(g)
    for k in range(d.max_core + 1):
        inner, outer = set(k_core(d, k + 1).tolist()), set(k_core(d, k).tolist())
        assert inner <= outer
        union = set()
        for j in range(k, d.max_core + 1):
            union |= set(d.shell(j).tolist())
        assert union == outer


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=25), st.randoms(use_true_random=False))
def test_relabelling_permutes_core_numbers(g, rnd):
    perm = list(range(g.node_count))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    before = core_numbers(g).core_number
    after = core_numbers(h).core_number
    assert all(after[perm[v]] == before[v] for v in range(g.node_count))
