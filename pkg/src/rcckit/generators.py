"""Seeded synthetic graph families.

``clique_star`` and ``ring_of_cliques`` are idealised networks with and
without a rich centrality club: a large clique surrounded by smaller
cliques that hang off it, versus a cycle of cliques whose largest member
sits on the side of the network.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from rcckit.graph import Graph

logger = logging.getLogger(__name__)

__all__ = [
    "GeneratorSpec",
    "erdos_renyi",
    "powerlaw_config",
    "clique_star",
    "ring_of_cliques",
    "generate",
    "FAMILIES",
]


def _rng(seed):
    return np.random.default_rng(seed)


def _clique_edges(nodes):
    return list(combinations(nodes, 2))


def erdos_renyi(n: int, p: float, seed=None) -> Graph:
    """G(n, p): every vertex pair linked independently with probability ``p``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    rng = _rng(seed)
    rows, cols = [], []
    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - i - 1) < p) + i + 1
        rows.append(np.full(len(hits), i, dtype=np.int64))
        cols.append(hits)
    if not rows:
        return Graph.empty(n)
    edges = np.stack([np.concatenate(rows), np.concatenate(cols)], axis=1)
    return Graph.from_edges(edges, n=n)


def powerlaw_config(n: int, exponent: float, k_min: int = 1, seed=None,
                    k_max: int | None = None) -> Graph:
    """Configuration-model graph with a power-law degree sequence.

    Degrees are drawn from ``p(k) ∝ k^-exponent`` on ``[k_min, k_max]``
    (``k_max`` defaults to ``n - 1``), stubs are matched uniformly at
    random, and the resulting self-loops and parallel edges are dropped.
    """
    if exponent <= 1.0:
        raise ValueError("exponent must exceed 1")
    if k_min < 1:
        raise ValueError("k_min must be >= 1")
    if n < 2:
        raise ValueError("n must be >= 2")
    k_max = n - 1 if k_max is None else min(k_max, n - 1)
    if k_max < k_min:
        raise ValueError("k_max must be >= k_min")
    rng = _rng(seed)
    support = np.arange(k_min, k_max + 1)
    weights = support.astype(np.float64) ** -exponent
    degrees = rng.choice(support, size=n, p=weights / weights.sum())
    if degrees.sum() % 2:
        v = int(rng.integers(n))
        degrees[v] += 1 if degrees[v] < k_max else -1
        logger.info("odd degree sum; adjusted one stub at vertex %d", v)
    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    rng.shuffle(stubs)
    return Graph.from_edges(stubs.reshape(-1, 2), n=n)


def clique_star(hub_size: int = 20, satellite_count: int = 10, satellite_size: int = 5,
                links_per_satellite: int = 1, seed=None) -> Graph:
    """A hub clique with smaller satellite cliques attached to it.

    Vertices ``0 .. hub_size-1`` form the hub.  Each satellite is a clique
    of ``satellite_size`` vertices joined to ``links_per_satellite``
    distinct, randomly chosen hub vertices; each link starts at a random
    satellite member.
    """
    if hub_size < 2:
        raise ValueError("hub_size must be >= 2")
    if satellite_count < 0:
        raise ValueError("satellite_count must be >= 0")
    if satellite_count:
        if satellite_size < 3:
            raise ValueError("satellite_size must be >= 3")
        if hub_size <= satellite_size:
            raise ValueError("hub_size must exceed satellite_size")
        if not 1 <= links_per_satellite <= hub_size:
            raise ValueError("links_per_satellite must lie in [1, hub_size]")
    rng = _rng(seed)
    edges = _clique_edges(range(hub_size))
    nxt = hub_size
    for _ in range(satellite_count):
        members = list(range(nxt, nxt + satellite_size))
        nxt += satellite_size
        edges += _clique_edges(members)
        anchors = rng.choice(hub_size, size=links_per_satellite, replace=False)
        ends = rng.choice(members, size=links_per_satellite)
        edges += [(int(a), int(b)) for a, b in zip(anchors, ends)]
    return Graph.from_edges(edges, n=nxt)


def ring_of_cliques(sizes, inter_edges: int = 1, seed=None) -> Graph:
    """Cliques of the given sizes arranged in a cycle.

    Consecutive cliques (and the last with the first) are joined by
    ``inter_edges`` distinct edges with random endpoints.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) < 3:
        raise ValueError("need at least three cliques")
    if min(sizes) < 3:
        raise ValueError("clique sizes must be >= 3")
    if inter_edges < 1:
        raise ValueError("inter_edges must be >= 1")
    rng = _rng(seed)
    groups = []
    edges = []
    nxt = 0
    for s in sizes:
        members = list(range(nxt, nxt + s))
        groups.append(members)
        edges += _clique_edges(members)
        nxt += s
    for i, a in enumerate(groups):
        b = groups[(i + 1) % len(groups)]
        if inter_edges > len(a) * len(b):
            raise ValueError("inter_edges exceeds the possible pairs between cliques")
        picks = rng.choice(len(a) * len(b), size=inter_edges, replace=False)
        edges += [(a[int(p) // len(b)], b[int(p) % len(b)]) for p in picks]
    return Graph.from_edges(edges, n=nxt)


FAMILIES = {
    "erdos-renyi": erdos_renyi,
    "powerlaw-config": powerlaw_config,
    "clique-star": clique_star,
    "ring-of-cliques": ring_of_cliques,
}


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator family plus its parameters and seed; JSON round-trippable."""

    family: str
    params: dict = field(default_factory=dict)
    rng_seed: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {sorted(FAMILIES)}")

    def build(self) -> Graph:
        return FAMILIES[self.family](**self.params, seed=self.rng_seed)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GeneratorSpec":
        return cls(**json.loads(text))


def generate(spec: GeneratorSpec) -> Graph:
    return spec.build()
