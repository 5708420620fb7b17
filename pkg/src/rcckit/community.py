"""Label-propagation communities and the core/community supervertex graph."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from rcckit.centrality import betweenness, closeness
from rcckit.cores import CoreDecomposition, core_numbers
from rcckit.graph import Graph, connected_components

__all__ = [
    "Partition",
    "SuperGraph",
    "detect_communities",
    "core_community_distribution",
    "supervertex_reduction",
]


@dataclass(frozen=True)
class Partition:
    """Dense community label per vertex; labels ordered by smallest member."""

    labels: np.ndarray
    count: int

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.labels == c)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.count)


def _canonical(labels: np.ndarray) -> np.ndarray:
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inv]


def detect_communities(g: Graph, seed=0, max_iter: int = 100) -> Partition:
    """Synchronous label propagation.

    Every vertex adopts the most frequent label in its closed neighbourhood,
    ties going to the smallest label.  Initial labels are a seeded
    permutation of the vertex ids.  Each resulting class is split into its
    connected pieces, so every community is connected.
    """
    n = g.node_count
    if n == 0:
        return Partition(np.zeros(0, dtype=np.int64), 0)
    labels = np.random.default_rng(seed).permutation(n).astype(np.int64)
    indptr, indices = g.indptr, g.indices
    src = np.repeat(np.arange(n), np.diff(indptr))
    seen = set()
    for _ in range(max_iter):
        rows = np.concatenate([src, np.arange(n)])
        cols = np.concatenate([labels[indices], labels])
        order = np.lexsort((cols, rows))
        r, c = rows[order], cols[order]
        brk = np.flatnonzero((np.diff(r) != 0) | (np.diff(c) != 0)) + 1
        starts = np.concatenate([[0], brk])
        counts = np.diff(np.concatenate([starts, [len(r)]]))
        gr, gc = r[starts], c[starts]
        # best (row, -count, label): first entry per row after sorting
        pick = np.lexsort((gc, -counts, gr))
        first = np.concatenate([[True], np.diff(gr[pick]) != 0])
        new = np.empty(n, dtype=np.int64)
        new[gr[pick][first]] = gc[pick][first]
        if np.array_equal(new, labels):
            break
        key = new.tobytes()
        if key in seen:
            labels = new
            break
        seen.add(key)
        labels = new
    # split disconnected label classes
    e = g.edges()
    same = labels[e[:, 0]] == labels[e[:, 1]]
    comp = connected_components(Graph.from_edges(e[same], n=n))
    out = _canonical(comp)
    return Partition(out, int(out.max()) + 1)


def core_community_distribution(g: Graph, p: Partition,
                                d: CoreDecomposition | None = None) -> list[dict]:
    """Communities holding at least one max-core vertex, largest first."""
    d = d or core_numbers(g)
    core = d.shell(d.max_core)
    sizes = p.sizes()
    hits = np.bincount(p.labels[core], minlength=p.count)
    rows = [{"community": c, "size": int(sizes[c]), "core_members": int(hits[c])}
            for c in np.flatnonzero(hits).tolist()]
    rows.sort(key=lambda r: (-r["size"], r["community"]))
    return rows


@dataclass(frozen=True)
class SuperGraph:
    """One supervertex per community (non-core members only) plus one for the core."""

    nodes: tuple
    edges: tuple

    def to_node_link(self) -> dict:
        def clean(x):
            return None if isinstance(x, float) and math.isnan(x) else x

        nodes = [{k: clean(v) for k, v in node.items()} for node in self.nodes]
        links = [{"source": a, "target": b} for a, b in self.edges]
        return {"directed": False, "multigraph": False, "graph": {},
                "nodes": nodes, "links": links}

    def to_json(self) -> str:
        return json.dumps(self.to_node_link(), sort_keys=True, indent=2)


def supervertex_reduction(g: Graph, p: Partition, d: CoreDecomposition | None = None,
                          threads: int | None = None) -> SuperGraph:
    """Collapse each community, minus its max-core vertices, to one supervertex
    and the max-core vertices to a further supervertex with id ``p.count``.

    Supervertices are joined when any original edge connects their members.
    Each carries the mean closeness and betweenness of its members (NaN when
    a community consists only of core vertices).
    """
    d = d or core_numbers(g)
    n = g.node_count
    is_core = d.core_number == d.max_core
    core_id = p.count
    assign = np.where(is_core, core_id, p.labels)
    clo = closeness(g, threads).values
    btw = betweenness(g, threads).values
    sizes = np.bincount(assign, minlength=core_id + 1)
    clo_sum = np.bincount(assign, weights=clo, minlength=core_id + 1)
    btw_sum = np.bincount(assign, weights=btw, minlength=core_id + 1)
    nodes = []
    for s in range(core_id + 1):
        size = int(sizes[s])
        nodes.append({
            "id": s,
            "kind": "core" if s == core_id else "community",
            "size": size,
            "mean_closeness": float(clo_sum[s] / size) if size else float("nan"),
            "mean_betweenness": float(btw_sum[s] / size) if size else float("nan"),
        })
    e = g.edges() if n else np.zeros((0, 2), dtype=np.int64)
    a, b = assign[e[:, 0]], assign[e[:, 1]]
    cross = a != b
    pairs = np.unique(np.sort(np.stack([a[cross], b[cross]], axis=1), axis=1), axis=0)
    return SuperGraph(tuple(nodes), tuple((int(x), int(y)) for x, y in pairs))
