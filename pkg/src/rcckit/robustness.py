"""Stability of top-k centrality rankings under random edge deletion."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from rcckit._parallel import ordered_map
from rcckit.centrality import centrality, kendall_tau, ranking
from rcckit.graph import Graph, connected_components

logger = logging.getLogger(__name__)

__all__ = [
    "RobustnessResult",
    "perturb_edges",
    "topk_tau",
    "robustness_sweep",
    "parse_fractions",
]


def perturb_edges(g: Graph, fraction: float, seed=None) -> tuple[Graph, np.ndarray]:
    """Delete ``floor(fraction * m)`` edges drawn uniformly without replacement.

    Returns the perturbed graph and the deleted edges.  When fewer than one
    edge would be removed the graph is returned unchanged with a warning.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must lie in (0, 1)")
    m = g.edge_count
    count = math.floor(fraction * m)
    if count < 1:
        logger.warning("fraction %.4g of %d edges deletes nothing", fraction, m)
        return g, np.zeros((0, 2), dtype=np.int64)
    edges = g.edges()
    rng = np.random.default_rng(seed)
    drop = np.sort(rng.choice(m, size=count, replace=False))
    keep = np.ones(m, dtype=bool)
    keep[drop] = False
    return Graph.from_edges(edges[keep], n=g.node_count, labels=g.labels), edges[drop]


def _snap(values: np.ndarray) -> np.ndarray:
    # equal up to accumulation noise counts as a tie
    return np.array([float(f"{v:.12g}") for v in values.tolist()])


def topk_tau(before: np.ndarray, after: np.ndarray, k: int) -> float:
    """Kendall tau-b between two top-``k`` lists over the union of their members.

    ``before`` and ``after`` are centrality vectors.  Each vertex in the union
    is scored by its value in a list where it is a top-``k`` member; vertices
    missing from a list tie below all of that list's members.  Exactly equal
    values stay tied instead of being ordered by id.
    """
    a, b = ranking(before)[:k], ranking(after)[:k]
    union = np.union1d(a, b)
    x = np.full(len(union), -np.inf)
    y = np.full(len(union), -np.inf)
    in_a, in_b = np.isin(union, a), np.isin(union, b)
    x[in_a] = _snap(before[union[in_a]])
    y[in_b] = _snap(after[union[in_b]])
    return kendall_tau(x, y)


@dataclass(frozen=True)
class RobustnessResult:
    metric: str
    delete_fraction: float
    trials: int
    tau_mean: float
    tau_sd: float
    k: int
    taus: tuple = ()
    fragmented: int = 0

    def as_row(self) -> dict:
        return {"metric": self.metric, "fraction": self.delete_fraction, "trials": self.trials,
                "k": self.k, "tau_mean": self.tau_mean, "tau_sd": self.tau_sd,
                "fragmented": self.fragmented}


def _fraction_key(fraction: float) -> int:
    return int(round(fraction * 1_000_000))


def _one_trial(g, metric, k, seed, giant_component, base, job):
    fraction, trial = job
    sub_seed = None if seed is None else [seed, _fraction_key(fraction), trial]
    pg, _ = perturb_edges(g, fraction, sub_seed)
    comp = connected_components(pg)
    fragmented = bool(len(comp) and comp.max() > 0)
    values = centrality(pg, metric, threads=1).values.astype(float)
    if giant_component and fragmented:
        giant = np.argmax(np.bincount(comp))
        values[comp != giant] = -np.inf
    return topk_tau(base, values, k), fragmented


def robustness_sweep(g: Graph, metric: str = "closeness", fractions=(0.01,), k: int = 50,
                     trials: int = 10, seed: int | None = 0, giant_component: bool = True,
                     threads: int | None = None) -> list[RobustnessResult]:
    """Mean and standard deviation of top-``k`` Kendall tau across random deletions.

    Each (fraction, trial) pair draws its deletions from a substream keyed
    on ``(seed, fraction, trial)``.  With ``giant_component`` the
    perturbed ranking is restricted to the largest component.
    """
    if k > g.node_count:
        raise ValueError(f"k={k} exceeds vertex count {g.node_count}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    base = centrality(g, metric, threads).values.astype(float)
    jobs = [(f, t) for f in fractions for t in range(trials)]
    outcomes = ordered_map(partial(_one_trial, g, metric, k, seed, giant_component, base),
                           jobs, threads)
    out = []
    for i, f in enumerate(fractions):
        chunk = outcomes[i * trials:(i + 1) * trials]
        taus = np.array([t for t, _ in chunk])
        out.append(RobustnessResult(metric, float(f), trials, float(taus.mean()),
                                    float(taus.std()), k, tuple(taus.tolist()),
                                    sum(fr for _, fr in chunk)))
    return out


def parse_fractions(text: str) -> list[float]:
    """``"0.01:0.08:0.01"`` (inclusive range) or ``"0.01,0.05"``."""
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        count = int(round((stop - start) / step)) + 1
        return [round(start + i * step, 10) for i in range(count)]
    return [float(x) for x in text.split(",") if x.strip()]
