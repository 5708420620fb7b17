"""Shortest-path centralities, top-k sets and rank comparison."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import partial
from typing import Iterable, Sequence

import numpy as np

from rcckit import _kernels
from rcckit._parallel import ordered_map, source_chunks
from rcckit.graph import Graph

logger = logging.getLogger(__name__)

__all__ = [
    "CentralityVector",
    "TopKSet",
    "METRICS",
    "degree",
    "closeness",
    "betweenness",
    "centrality",
    "top_k",
    "ranking",
    "jaccard_overlap",
    "kendall_tau",
    "UndefinedRankCorrelation",
]

METRICS = ("degree", "closeness", "betweenness")


class UndefinedRankCorrelation(ValueError):
    """Raised when a rank correlation has fewer than two items to compare."""


@dataclass(frozen=True)
class CentralityVector:
    metric: str
    values: np.ndarray

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class TopKSet:
    metric: str
    k: int
    members: frozenset


def degree(g: Graph) -> CentralityVector:
    return CentralityVector("degree", g.degrees.astype(np.float64))


def closeness(g: Graph, threads: int | None = None) -> CentralityVector:
    """Reciprocal of the summed hop distance to every reachable vertex.

    Distances are summed within the vertex's own component; isolated
    vertices get 0.
    """
    n = g.node_count
    kern = partial(_kernels.distance_sums, g.indptr, g.indices)
    sums = np.concatenate(ordered_map(kern, source_chunks(n), threads)) if n else np.zeros(0)
    sums = sums.astype(np.float64)
    values = np.divide(1.0, sums, out=np.zeros(n), where=sums > 0)
    return CentralityVector("closeness", values)


def betweenness(g: Graph, threads: int | None = None) -> CentralityVector:
    """Unnormalised betweenness over unordered vertex pairs (Brandes)."""
    n = g.node_count
    if n == 0:
        return CentralityVector("betweenness", np.zeros(0))
    kern = partial(_kernels.brandes_partial, g.indptr, g.indices)
    total = np.zeros(n)
    for part in ordered_map(kern, source_chunks(n), threads):
        total += part
    return CentralityVector("betweenness", total / 2.0)


def centrality(g: Graph, metric: str, threads: int | None = None) -> CentralityVector:
    if metric == "degree":
        return degree(g)
    if metric == "closeness":
        return closeness(g, threads)
    if metric == "betweenness":
        return betweenness(g, threads)
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def ranking(values) -> np.ndarray:
    """Vertex ids ordered by decreasing value, ties by ascending id."""
    values = values.values if isinstance(values, CentralityVector) else np.asarray(values)
    return np.lexsort((np.arange(len(values)), -values))


def top_k(c: CentralityVector | Sequence[float], k: int, metric: str | None = None) -> TopKSet:
    """The ``k`` highest-valued vertices, ties broken by ascending id."""
    if isinstance(c, CentralityVector):
        metric = metric or c.metric
    if k < 0:
        raise ValueError("k must be non-negative")
    order = ranking(c)
    if k > len(order):
        raise ValueError(f"k={k} exceeds vertex count {len(order)}")
    return TopKSet(metric or "values", k, frozenset(int(v) for v in order[:k]))


def jaccard_overlap(a, b) -> float:
    """|A ∩ B| / |A ∪ B|; two empty sets count as identical."""
    sa = a.members if isinstance(a, TopKSet) else frozenset(a)
    sb = b.members if isinstance(b, TopKSet) else frozenset(b)
    union = sa | sb
    if not union:
        logger.info("jaccard_overlap of two empty sets taken as 1")
        return 1.0
    return len(sa & sb) / len(union)


def kendall_tau(x: Iterable[float], y: Iterable[float]) -> float:
    """Kendall tau-b between two score (or rank) sequences over the same items.

    Pairs tied in both sequences count as neither concordant nor discordant;
    the tau-b denominator corrects for ties in either sequence.  Without
    ties this is ``(concordant - discordant) / C(n, 2)``.
    """
    x = np.asarray(list(x), dtype=np.float64)
    y = np.asarray(list(y), dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError("rankings must cover the same items")
    n = len(x)
    if n < 2:
        raise UndefinedRankCorrelation("kendall tau needs at least two items")
    # comparisons rather than differences so -inf entries tie cleanly
    dx = (x[:, None] > x[None, :]).astype(np.int8) - (x[:, None] < x[None, :])
    dy = (y[:, None] > y[None, :]).astype(np.int8) - (y[:, None] < y[None, :])
    iu = np.triu_indices(n, 1)
    sx, sy = dx[iu], dy[iu]
    s = float((sx * sy).sum())
    nx_ = float(np.count_nonzero(sx))
    ny_ = float(np.count_nonzero(sy))
    if nx_ == 0 or ny_ == 0:
        raise UndefinedRankCorrelation("one ranking is constant")
    return float(s / np.sqrt(nx_ * ny_))
