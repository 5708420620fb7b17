"""Insert or remove a rich centrality club by rewiring top-degree vertices."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from itertools import combinations

import numpy as np

from rcckit.centrality import ranking
from rcckit.graph import Graph

logger = logging.getLogger(__name__)

__all__ = ["ModificationPlan", "NothingToModify", "modify_rcc", "top_degree_vertices"]

MODES = ("insert", "remove")


class NothingToModify(ValueError):
    """Raised when the candidate edge set among the top-degree vertices is empty."""


@dataclass(frozen=True)
class ModificationPlan:
    h: int
    gamma: float
    mode: str
    rng_seed: int | None
    top_vertices: tuple
    candidate_count: int
    chosen_edges: tuple

    def to_dict(self) -> dict:
        out = asdict(self)
        out["chosen_edges"] = [list(e) for e in self.chosen_edges]
        out["top_vertices"] = list(self.top_vertices)
        return out


def top_degree_vertices(g: Graph, h: int) -> np.ndarray:
    """The ``h`` highest-degree vertices, ties by ascending id."""
    return ranking(g.degrees)[:h]


def modify_rcc(g: Graph, h: int = 30, gamma: float = 0.2, mode: str = "insert",
               seed=None) -> tuple[Graph, ModificationPlan]:
    """Add (``insert``) or delete (``remove``) edges among the top-``h`` degree vertices.

    Vertices are ranked once by degree in ``g``.  The candidate set is every
    missing pair among them (insert) or every existing edge among them
    (remove); ``floor(gamma * |candidates|)`` of those are drawn uniformly
    without replacement and applied.  ``g`` itself is left untouched.

    Raises
    ------
    NothingToModify
        If the candidate set is empty.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if h < 2:
        raise ValueError("h must be >= 2")
    if h > g.node_count:
        raise ValueError(f"h={h} exceeds vertex count {g.node_count}")
    if not 0.0 < gamma <= 1.0:
        raise ValueError("gamma must lie in (0, 1]")
    top = top_degree_vertices(g, h)
    pairs = [(int(min(u, v)), int(max(u, v))) for u, v in combinations(top.tolist(), 2)]
    want_present = mode == "remove"
    candidates = sorted(p for p in pairs if g.has_edge(*p) == want_present)
    if not candidates:
        raise NothingToModify(f"no {'existing' if want_present else 'missing'} edges among top-{h}")
    count = math.floor(gamma * len(candidates))
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(len(candidates), size=count, replace=False))
    chosen = tuple(candidates[i] for i in picks.tolist())
    if count == 0:
        logger.warning("gamma * |E_1| < 1; graph unchanged")
    if mode == "insert":
        out = g.with_edges_added(chosen) if chosen else g
    else:
        out = g.with_edges_removed(chosen) if chosen else g
    plan = ModificationPlan(h, gamma, mode, seed if isinstance(seed, (int, type(None))) else None,
                            tuple(int(v) for v in top), len(candidates), chosen)
    return out, plan
