import math
import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oracles import all_pairs_distances, closeness_oracle
from rcckit.cores import core_numbers
from rcckit.generators import clique_star, ring_of_cliques
from rcckit.graph import Graph
from rcckit.rcc import (
    RccCriteria,
    density_profile,
    detect_rcc,
    lemma_condition,
    lemma_scan,
    path_length_estimate,
    reference_core,
    shell_to_core_distance,
)


def ring_instance(seed, extra=14):
    sizes = [10] + np.random.default_rng(seed).integers(3, 8, size=extra).tolist()
    return ring_of_cliques(sizes, 1, seed=seed)


def test_density_profile_clique_star():
    g = clique_star(20, 10, 5, 1, seed=0)
    prof = density_profile(g, core_numbers(g))
    inner, outer = prof.bucket_means["inner"], prof.bucket_means["outer"]
    assert inner["d_mean"] > outer["d_mean"] and inner["n_mean"] < outer["n_mean"]
    assert prof.property1_ok


def test_regular_graph_is_single_shell_degenerate():
    c = Graph.from_edges([(i, (i + 1) % 12) for i in range(12)] + [(i, (i + 6) % 12) for i in range(6)])
    prof = density_profile(c, core_numbers(c))
    assert prof.degenerate and prof.property1_ok


def test_k4_pendant_fails_density(k4_pendant):
    prof = density_profile(k4_pendant, core_numbers(k4_pendant))
    assert [(k, n) for k, n, _ in prof.shells] == [(3, 5), (1, 2)]
    assert not prof.property1_ok


def test_distance_one_when_all_adjacent_to_core(k4_pendant):
    d = core_numbers(k4_pendant)
    assert shell_to_core_distance(k4_pendant, d, 3) == {1: (1.0, 0)}


def test_distance_matches_bfs_oracle_on_ring():
    g = ring_instance(3)
    d = core_numbers(g)
    x = d.max_core
    dist = all_pairs_distances(g.node_count, [tuple(e) for e in g.edges().tolist()])
    core = set(d.k_core(x).tolist())
    got = shell_to_core_distance(g, d, x)
    for k, (mean, unreachable) in got.items():
        expect = np.mean([min(dist[v][c] for c in core) for v in d.shell(k).tolist()])
        assert mean == pytest.approx(expect) and unreachable == 0
    assert max(m for m, _ in got.values()) >= 4


def test_unreachable_vertices_counted():
    g = Graph.from_edges(list(combinations(range(4), 2)) + [(4, 5)])
    d = core_numbers(g)
    assert shell_to_core_distance(g, d, 3) == {1: (math.inf, 2)}


def test_clique_star_distances_at_most_two():
    g = clique_star(20, 10, 5, 1, seed=2)
    d = core_numbers(g)
    assert all(m <= 2 for m, _ in shell_to_core_distance(g, d, d.max_core).values())


def test_verdicts_on_generated_models():
    v = detect_rcc(clique_star(20, 30, 4, 1, seed=0))
    assert v.has_rcc and v.rcc_members == frozenset(range(20))
    assert not detect_rcc(ring_instance(0)).has_rcc


def test_complete_graph_is_degenerate_club():
    v = detect_rcc(Graph.from_edges(list(combinations(range(10), 2))))
    assert v.has_rcc and v.degenerate and len(v.rcc_members) == 10


def test_forest_has_no_club():
    v = detect_rcc(Graph.from_edges([(0, 1), (1, 2), (1, 3)]))
    assert not v.has_rcc and "max core" in v.reason


def test_strict_mode_checks_every_shell():
    g = clique_star(20, 30, 4, 1, seed=0)
    assert detect_rcc(g).has_rcc
    assert not detect_rcc(g, RccCriteria(strict=True)).has_rcc


def test_criteria_validation():
    with pytest.raises(ValueError):
        RccCriteria(eigengap_threshold=0)
    with pytest.raises(ValueError):
        RccCriteria(target_core_density=1.5)


def test_reference_core_falls_back_to_innermost():
    g = ring_instance(1)
    d = core_numbers(g)
    assert reference_core(g, d, 0.8) == d.max_core
    assert reference_core(g, d, 1.01 - 1e-9) == d.max_core


def test_verdict_json_shape():
    out = detect_rcc(clique_star(20, 10, 5, 1, seed=0)).to_dict()
    assert {"has_rcc", "property1_ok", "property2_ok", "property3_ok", "rcc_members", "shells"} <= set(out)


def test_lemma_hand_arithmetic():
    # log 1000 / log 2 = 9.97 > 1 + log 10 / log 9 = 2.05
    res = lemma_scan({2: (10, 9), 1: (1000, 2)}, lambda y, z: 1.0)
    assert res.core == 2
    assert res.estimates[1] == pytest.approx(math.log(1000) / math.log(2))


def test_lemma_needs_lower_shell_and_defined_estimates():
    assert lemma_scan({3: (10, 9)}, lambda y, z: 1.0).core is None
    res = lemma_scan({2: (10, 9), 1: (5, 1.0)}, lambda y, z: 1.0)
    assert res.core is None and res.excluded == (1,)
    assert path_length_estimate(10, 1) is None


def test_lemma_on_clique_star_holds_max_closeness_vertex():
    g = clique_star(20, 30, 4, 1, seed=5)
    res = lemma_condition(g)
    assert res.core == 19
    edges = [tuple(e) for e in g.edges().tolist()]
    clo = closeness_oracle(g.node_count, edges)
    best = max(range(g.node_count), key=lambda v: (clo[v], -v))
    assert core_numbers(g).core_number[best] >= res.core


def test_lemma_on_ring_misses_top_closeness():
    g = ring_instance(2)
    res = lemma_condition(g)
    d = core_numbers(g)
    clo = closeness_oracle(g.node_count, [tuple(e) for e in g.edges().tolist()])
    best = max(range(g.node_count), key=lambda v: (clo[v], -v))
    assert res.core is None or d.core_number[best] < res.core


def test_detection_deterministic_and_permutation_invariant():
    g = clique_star(20, 10, 5, 1, seed=4)
    perm = list(range(g.node_count))
    random.Random(0).shuffle(perm)
    a, b, c = detect_rcc(g), detect_rcc(g), detect_rcc(g.relabel(perm))
    assert a.to_dict() == b.to_dict()
    assert a.has_rcc == c.has_rcc
    assert {perm[v] for v in a.rcc_members} == set(c.rcc_members)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=4, max_n=25))
def test_distance_non_increasing_as_core_grows(g):
    d = core_numbers(g)
    ks = d.nonempty_shells
    for hi, lo in zip(ks, ks[1:]):
        far, near = shell_to_core_distance(g, d, hi), shell_to_core_distance(g, d, lo)
        for k in near:
            assert near[k][0] <= far[k][0] or math.isinf(far[k][0])
