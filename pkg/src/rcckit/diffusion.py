"""Flood-broadcast spreading from seed sets chosen by different strategies."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial

import numpy as np

from rcckit import _kernels
from rcckit._parallel import ordered_map
from rcckit.centrality import centrality, top_k
from rcckit.cores import core_numbers
from rcckit.graph import Graph

__all__ = [
    "STRATEGIES",
    "FRACTIONS",
    "SpreadResult",
    "select_seeds",
    "flood_spread",
    "spread_experiment",
]

STRATEGIES = ("innermost-core", "top-degree", "top-closeness", "top-betweenness", "random")
FRACTIONS = (0.25, 0.5, 0.75, 1.0)


def select_seeds(g: Graph, strategy: str, s: int = 10, seed=None,
                 threads: int | None = None) -> np.ndarray:
    """Pick ``s`` seed vertices (returned sorted).

    ``innermost-core`` orders vertices by core number, then degree, both
    descending, then id, so the max-core shell is used first and padded
    from the next shells when it is too small.
    """
    if s <= 0:
        raise ValueError("seed set size must be positive")
    n = g.node_count
    if s > n:
        raise ValueError(f"seed set size {s} exceeds vertex count {n}")
    if strategy == "innermost-core":
        core = core_numbers(g).core_number
        order = np.lexsort((np.arange(n), -g.degrees, -core))
        chosen = order[:s]
    elif strategy == "random":
        chosen = np.random.default_rng(seed).choice(n, size=s, replace=False)
    elif strategy.startswith("top-"):
        metric = strategy[4:]
        chosen = np.fromiter(top_k(centrality(g, metric, threads), s).members, dtype=np.int64)
    else:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    return np.sort(chosen.astype(np.int64))


@dataclass(frozen=True)
class SpreadResult:
    strategy: str
    seed_size: int
    steps_to_fraction: dict
    informed_curve: tuple
    reachable: int
    node_count: int
    steps_to_fraction_total: dict = field(default_factory=dict)

    @property
    def unreachable(self) -> int:
        return self.node_count - self.reachable


def _steps_to(curve: np.ndarray, target: float):
    # the seed set alone is round 0; a fraction counts as reached at the
    # first completed round, unless the seeds already saturate everything
    if len(curve) == 1:
        return 0 if curve[0] >= target else None
    hit = np.flatnonzero(curve[1:] >= target)
    return int(hit[0]) + 1 if len(hit) else None


def flood_spread(g: Graph, seeds, strategy: str = "custom") -> SpreadResult:
    """Synchronous flood broadcast: each round every informed vertex informs
    all its neighbours.

    ``informed_curve[t]`` is the number informed after ``t`` rounds
    (``t = 0`` is the seed set) and a fraction is reached at the first
    round ``t >= 1`` whose count meets it.  Fractions are measured against the
    vertices reachable from the seeds; ``steps_to_fraction_total`` uses
    the whole vertex count and holds None for unattainable fractions.
    """
    seeds = np.unique(np.asarray(list(seeds), dtype=np.int64))
    if len(seeds) == 0:
        raise ValueError("seed set is empty")
    levels = _kernels.flood_levels(g.indptr, g.indices, seeds)
    curve = np.cumsum(levels)
    reach = int(curve[-1])
    n = g.node_count
    steps = {f: _steps_to(curve, f * reach) for f in FRACTIONS}
    total = {f: _steps_to(curve, f * n) for f in FRACTIONS}
    return SpreadResult(strategy, len(seeds), steps, tuple(int(c) for c in curve), reach, n, total)


def _trial(g, s, seed, threads, job):
    strategy, trial = job
    rng_seed = None if seed is None else [seed, STRATEGIES.index(strategy), trial]
    seeds = select_seeds(g, strategy, s, seed=rng_seed, threads=threads)
    return flood_spread(g, seeds, strategy)


def spread_experiment(g: Graph, strategies=STRATEGIES, s: int = 10, trials: int = 10,
                      seed: int = 0, threads: int | None = None) -> list[dict]:
    """Run every strategy ``trials`` times; one row per (strategy, trial, fraction).

    Random seed sets for trial ``t`` come from a substream keyed on
    ``(seed, strategy, t)``, so rows do not depend on execution order.
    """
    for st in strategies:
        if st not in STRATEGIES:
            raise ValueError(f"unknown strategy {st!r}")
    jobs = [(st, t) for st in strategies for t in range(trials)]
    # deterministic strategies need one computation; reuse it across trials
    cache = {}
    todo = []
    for st, t in jobs:
        key = (st, t if st == "random" else 0)
        if key not in cache:
            cache[key] = None
            todo.append(key)
    results = ordered_map(partial(_trial, g, s, seed, 1), todo, threads)
    cache.update(zip(todo, results))
    rows = []
    for st, t in jobs:
        res = cache[(st, t if st == "random" else 0)]
        for f in FRACTIONS:
            rows.append({"strategy": st, "trial": t, "fraction": f,
                         "steps": res.steps_to_fraction[f]})
    return rows
