"""Immutable undirected simple graphs in compressed adjacency form.

The :class:`Graph` stores a CSR pair ``(indptr, indices)`` with every
neighbour list sorted ascending.  External vertex labels read from edge
lists are remapped to dense integer ids in order of first appearance.
"""

from __future__ import annotations

import io
import logging
import math
import os
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np
import scipy.sparse as sp

logger = logging.getLogger(__name__)

__all__ = [
    "Graph",
    "GraphStats",
    "EdgeListParseError",
    "EmptyGraphError",
    "PowerLawFitError",
    "load_edge_list",
    "read_edge_list",
    "write_edge_list",
    "format_edge_list",
    "clustering_coefficient",
    "powerlaw_fit",
    "connected_components",
    "graph_stats",
]


class EdgeListParseError(ValueError):
    """Raised for a malformed line in an edge-list stream."""

    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line!r}")


class EmptyGraphError(ValueError):
    """Raised when an input yields no vertices."""


class PowerLawFitError(ValueError):
    """Raised when a degree tail cannot support a power-law fit."""


class Graph:
    """Undirected simple graph on vertices ``0 .. n-1``.

    Parameters
    ----------
    indptr, indices : array-like of int
        CSR structure.  Neighbour lists must be sorted, symmetric, free of
        self-loops and duplicates; use :meth:`from_edges` to build one from
        arbitrary input.
    labels : sequence, optional
        External label for each vertex.  Defaults to the vertex id.
    """

    __slots__ = ("indptr", "indices", "labels", "_label_index", "_degrees")

    def __init__(self, indptr, indices, labels: Sequence[Hashable] | None = None):
        indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        indices = np.ascontiguousarray(indices, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self.indptr = indptr
        self.indices = indices
        n = len(indptr) - 1
        if labels is None:
            labels = list(range(n))
        elif len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
        self.labels = tuple(labels)
        self._label_index = None
        degrees = np.diff(indptr)
        degrees.setflags(write=False)
        self._degrees = degrees

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        n: int | None = None,
        labels: Sequence[Hashable] | None = None,
    ) -> "Graph":
        """Build a graph from integer endpoint pairs.

        Self-loops and repeated edges (in either orientation) are dropped.
        ``n`` defaults to one more than the largest endpoint.
        """
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint out of range")
        arr = arr[arr[:, 0] != arr[:, 1]]
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        pairs = np.unique(np.stack([lo, hi], axis=1), axis=0) if len(lo) else np.empty((0, 2), np.int64)
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, rows + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(indptr, cols, labels)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64))

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def label_map(self) -> dict:
        """Mapping from external label to vertex id."""
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        return self._label_index

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self) -> np.ndarray:
        """Edge array of shape (m, 2) with ``u < v``, lexicographically sorted."""
        rows = np.repeat(np.arange(self.node_count, dtype=np.int64), self._degrees)
        mask = rows < self.indices
        return np.stack([rows[mask], self.indices[mask]], axis=1)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges()}

    def adjacency_matrix(self, dtype=np.float64) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=dtype)
        n = self.node_count
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def subgraph(self, nodes: Iterable[int]) -> tuple["Graph", np.ndarray]:
        """Induced subgraph on ``nodes``.

        Returns the subgraph and the array mapping its vertex ids back to
        ids of this graph (sorted ascending).
        """
        members = np.unique(np.fromiter(nodes, dtype=np.int64))
        local = np.full(self.node_count, -1, dtype=np.int64)
        local[members] = np.arange(len(members))
        edges = self.edges()
        keep = (local[edges[:, 0]] >= 0) & (local[edges[:, 1]] >= 0)
        sub_edges = local[edges[keep]]
        labels = [self.labels[i] for i in members]
        return Graph.from_edges(sub_edges, n=len(members), labels=labels), members

    def with_edges_added(self, new_edges) -> "Graph":
        new = np.asarray(new_edges, dtype=np.int64).reshape(-1, 2)
        return Graph.from_edges(np.concatenate([self.edges(), new]), n=self.node_count,
                                labels=self.labels)

    def with_edges_removed(self, old_edges) -> "Graph":
        old = np.asarray(old_edges, dtype=np.int64).reshape(-1, 2)
        drop = {(min(u, v), max(u, v)) for u, v in old.tolist()}
        kept = [e for e in self.edges().tolist() if tuple(e) not in drop]
        return Graph.from_edges(np.asarray(kept, dtype=np.int64).reshape(-1, 2),
                                n=self.node_count, labels=self.labels)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        perm = np.asarray(perm, dtype=np.int64)
        labels = [None] * self.node_count
        for v, p in enumerate(perm.tolist()):
            labels[p] = self.labels[v]
        return Graph.from_edges(perm[self.edges()], n=self.node_count, labels=labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


def read_edge_list(source, comments: str = "#%") -> Graph:
    """Parse a whitespace-separated edge list.

    ``source`` is a path, a text stream or a binary stream.  Lines whose
    first non-blank character is in ``comments`` are skipped, as are blank
    lines.  Extra columns after the first two (weights, timestamps) are
    ignored.  Self-loops and duplicate edges are dropped with a warning.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return read_edge_list(fh, comments)
    label_index: dict[str, int] = {}
    labels: list[str] = []
    us: list[int] = []
    vs: list[int] = []
    loops = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        stripped = line.strip()
        if not stripped or stripped[0] in comments:
            continue
        parts = stripped.split()
        if len(parts) < 2:
            raise EdgeListParseError(lineno, line.rstrip("\n"), "expected two vertex tokens")
        ids = []
        for tok in parts[:2]:
            if not tok.isprintable():
                raise EdgeListParseError(lineno, line.rstrip("\n"), "unprintable token")
            idx = label_index.get(tok)
            if idx is None:
                idx = label_index[tok] = len(labels)
                labels.append(tok)
            ids.append(idx)
        if ids[0] == ids[1]:
            loops += 1
            continue
        us.append(ids[0])
        vs.append(ids[1])
    if not labels:
        raise EmptyGraphError("edge list contains no edges")
    edges = np.stack([np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)], axis=1)
    g = Graph.from_edges(edges, n=len(labels), labels=_coerce_labels(labels))
    dups = len(us) - g.edge_count
    if loops or dups:
        logger.warning("dropped %d self-loop(s) and %d duplicate edge(s)", loops, dups)
    return g


def load_edge_list(data: bytes | str) -> Graph:
    """Parse an in-memory edge list (see :func:`read_edge_list`)."""
    if isinstance(data, bytes):
        return read_edge_list(io.BytesIO(data))
    return read_edge_list(io.StringIO(data))


def _coerce_labels(labels: list[str]) -> list:
    # all-integer label sets keep integer labels so round trips stay numeric
    try:
        ints = [int(x) for x in labels]
    except ValueError:
        return labels
    if all(str(i) == s for i, s in zip(ints, labels)):
        return ints
    return labels


def format_edge_list(g: Graph, use_labels: bool = True) -> str:
    """Deterministic edge-list text: one ``u v`` per line, ``u < v`` sorted by id."""
    lines = []
    for u, v in g.edges().tolist():
        if use_labels:
            lines.append(f"{g.labels[u]} {g.labels[v]}")
        else:
            lines.append(f"{u} {v}")
    return "\n".join(lines) + ("\n" if lines else "")


def write_edge_list(g: Graph, path, use_labels: bool = True) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(g, use_labels))


def clustering_coefficient(g: Graph) -> tuple[np.ndarray, float]:
    """Local clustering coefficient of every vertex and their mean.

    Vertices of degree below two get 0.
    """
    n = g.node_count
    if n == 0:
        return np.zeros(0), 0.0
    a = g.adjacency_matrix()
    triangles = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel() / 2.0
    deg = g.degrees.astype(np.float64)
    pairs = deg * (deg - 1) / 2.0
    local = np.divide(triangles, pairs, out=np.zeros(n), where=pairs > 0)
    return local, float(local.mean())


def powerlaw_fit(g_or_degrees, k_min: int = 1) -> float:
    """Discrete maximum-likelihood power-law exponent of a degree tail.

    Uses the continuous approximation with the half-integer shift::

        alpha = 1 + n_tail / sum(log(k_i / (k_min - 0.5)))

    over degrees ``k_i >= k_min``.

    Raises
    ------
    PowerLawFitError
        If the tail is empty or all its degrees are identical (a single
        degree value carries no information about a tail exponent).
    """
    if k_min < 1:
        raise ValueError("k_min must be >= 1")
    deg = g_or_degrees.degrees if isinstance(g_or_degrees, Graph) else np.asarray(g_or_degrees)
    tail = np.asarray(deg, dtype=np.float64)
    tail = tail[tail >= k_min]
    if len(tail) == 0:
        raise PowerLawFitError(f"no degrees >= k_min={k_min}")
    if np.all(tail == tail[0]):
        raise PowerLawFitError("degree tail is constant; exponent is not identifiable")
    log_sum = float(np.log(tail / (k_min - 0.5)).sum())
    return 1.0 + len(tail) / log_sum


def connected_components(g: Graph) -> np.ndarray:
    """Component id per vertex, numbered from 0 in order of smallest member."""
    n = g.node_count
    comp = np.full(n, -1, dtype=np.int64)
    indptr, indices = g.indptr, g.indices
    cid = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = cid
        stack = [s]
        while stack:
            v = stack.pop()
            for w in indices[indptr[v]:indptr[v + 1]]:
                if comp[w] < 0:
                    comp[w] = cid
                    stack.append(w)
        cid += 1
    return comp


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    powerlaw_alpha: float
    mean_degree: float
    mean_clustering: float
    mean_betweenness: float
    largest_core_number: int

    def as_row(self) -> dict:
        return {
            "nodes": self.node_count,
            "edges": self.edge_count,
            "powerlaw_alpha": self.powerlaw_alpha,
            "mean_degree": self.mean_degree,
            "mean_clustering": self.mean_clustering,
            "mean_betweenness": self.mean_betweenness,
            "largest_core_number": self.largest_core_number,
        }


def graph_stats(g: Graph, k_min: int = 1, with_betweenness: bool = True) -> GraphStats:
    """Whole-graph summary: power-law exponent, mean degree, clustering,
    normalised mean betweenness and largest core number."""
    from rcckit.centrality import betweenness
    from rcckit.cores import core_numbers

    n = g.node_count
    if n == 0:
        raise EmptyGraphError("graph has no vertices")
    try:
        alpha = powerlaw_fit(g, k_min)
    except PowerLawFitError:
        alpha = math.nan
    _, cc = clustering_coefficient(g)
    if with_betweenness and n > 2:
        bc = betweenness(g).values / ((n - 1) * (n - 2) / 2.0)
        mean_bc = float(bc.mean())
    else:
        mean_bc = math.nan
    return GraphStats(
        node_count=n,
        edge_count=g.edge_count,
        powerlaw_alpha=alpha,
        mean_degree=2.0 * g.edge_count / n,
        mean_clustering=cc,
        mean_betweenness=mean_bc,
        largest_core_number=core_numbers(g).max_core,
    )
