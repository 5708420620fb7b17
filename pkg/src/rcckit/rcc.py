"""Rich-centrality-club detection from the shell structure of a graph.

A graph is judged to hold a rich centrality club when

1. shell subgraphs get smaller and denser from the periphery inwards,
2. shell subgraphs are expander-like (eigengap above a threshold), and
3. every shell is a few hops away from a dense inner core.

Property 1 is assessed on inner/mid/outer bucket means.  Property 2 by
default inspects every shell of the inner and mid buckets; ``strict=True``
extends that to all shells.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from rcckit import _kernels
from rcckit.cores import CoreDecomposition, core_numbers, shell_buckets, shell_subgraph
from rcckit.graph import Graph
from rcckit.spectral import EigengapProfile, shell_eigengap_profile

logger = logging.getLogger(__name__)

__all__ = [
    "RccCriteria",
    "ShellRecord",
    "ShellProfile",
    "DensityProfile",
    "RccVerdict",
    "LemmaResult",
    "density_profile",
    "core_density",
    "reference_core",
    "shell_to_core_distance",
    "shell_profile",
    "detect_rcc",
    "lemma_condition",
    "lemma_scan",
    "path_length_estimate",
]


@dataclass(frozen=True)
class RccCriteria:
    eigengap_threshold: float = 0.5
    distance_threshold: float = 4.0
    target_core_density: float = 0.8
    strict: bool = False
    min_component_size: int = 3

    def __post_init__(self):
        if self.eigengap_threshold <= 0:
            raise ValueError("eigengap_threshold must be positive")
        if self.distance_threshold < 1:
            raise ValueError("distance_threshold must be >= 1")
        if not 0 < self.target_core_density <= 1:
            raise ValueError("target_core_density must lie in (0, 1]")


@dataclass(frozen=True)
class DensityProfile:
    shells: tuple  # (k, n_k, d_k), innermost first
    bucket_means: dict  # bucket -> {"n_mean", "n_sd", "d_mean", "d_sd", "count"}
    property1_ok: bool
    degenerate: bool


def density_profile(g: Graph, d: CoreDecomposition) -> DensityProfile:
    """Size and mean degree of every shell subgraph, with the bucket-level
    check that mean degree falls and size grows from inner to outer."""
    recs = []
    for k in d.nonempty_shells:
        sub = shell_subgraph(g, d, k)
        recs.append((k, sub.n_k, sub.d_k))
    buckets = shell_buckets(d)
    means = {}
    for name, ks in buckets.items():
        rows = [r for r in recs if r[0] in ks]
        if rows:
            ns = np.array([r[1] for r in rows], dtype=float)
            ds = np.array([r[2] for r in rows], dtype=float)
            means[name] = {"n_mean": float(ns.mean()), "n_sd": float(ns.std()),
                           "d_mean": float(ds.mean()), "d_sd": float(ds.std()),
                           "count": len(rows)}
    ordered = [means[name] for name, _ in buckets.items() if name in means]
    degenerate = len(ordered) < 2
    ok = all(a["d_mean"] > b["d_mean"] and a["n_mean"] < b["n_mean"]
             for a, b in zip(ordered, ordered[1:]))
    return DensityProfile(tuple(recs), means, ok, degenerate)


def core_density(g: Graph, d: CoreDecomposition, x: int) -> float:
    members = d.k_core(x)
    n = len(members)
    if n < 2:
        return 1.0 if n == 1 else 0.0
    sub, _ = g.subgraph(members)
    return 2.0 * sub.edge_count / (n * (n - 1))


def reference_core(g: Graph, d: CoreDecomposition, target_density: float = 0.8) -> int:
    """Deepest core index whose induced subgraph has density >= ``target_density``.

    Falls back to the innermost core when none qualifies.
    """
    for k in d.nonempty_shells:
        if core_density(g, d, k) >= target_density:
            return k
    return d.max_core


def shell_to_core_distance(g: Graph, d: CoreDecomposition, x: int) -> dict:
    """Mean hop distance from each shell below ``x`` to the nearest vertex of core ``x``.

    Returns ``{k: (mean, unreachable_count)}``.  Unreachable vertices are
    left out of the mean; a shell with no reachable vertex gets ``inf``.
    """
    core = d.k_core(x)
    if len(core) == 0:
        raise ValueError(f"core {x} is empty")
    dist = _kernels.bfs_distances(g.indptr, g.indices, core.astype(np.int64))
    out = {}
    for k in d.nonempty_shells:
        if k >= x:
            continue
        dk = dist[d.shell(k)]
        reach = dk[dk >= 0]
        mean = float(reach.mean()) if len(reach) else math.inf
        out[k] = (mean, int(len(dk) - len(reach)))
    return out


@dataclass(frozen=True)
class ShellRecord:
    k: int
    bucket: str
    n_k: int
    d_k: float
    lambda2: float
    r_k: float

    def as_dict(self) -> dict:
        return {"shell": self.k, "bucket": self.bucket, "n_k": self.n_k, "d_k": self.d_k,
                "lambda2": _json_float(self.lambda2), "r_k": _json_float(self.r_k)}


@dataclass(frozen=True)
class ShellProfile:
    records: tuple  # ShellRecord, innermost first
    buckets: dict  # bucket -> list of shell indices
    bucket_aggregates: dict
    reference_core: int

    def by_shell(self) -> dict:
        return {r.k: r for r in self.records}


def _json_float(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return None
    return x


def shell_profile(g: Graph, d: CoreDecomposition | None = None,
                  criteria: RccCriteria | None = None, threads: int | None = None,
                  eigen: EigengapProfile | None = None,
                  density: DensityProfile | None = None) -> ShellProfile:
    """Per-shell ``n_k``, ``d_k``, eigengap and distance to the reference core."""
    criteria = criteria or RccCriteria()
    d = d if d is not None else core_numbers(g)
    density = density or density_profile(g, d)
    eigen = eigen or shell_eigengap_profile(g, d, min_size=criteria.min_component_size,
                                            threads=threads)
    x = reference_core(g, d, criteria.target_core_density)
    dist = shell_to_core_distance(g, d, x)
    lam = {r.k: r.lambda2 for r in eigen.shells}
    buckets = shell_buckets(d)
    recs = []
    for k, n_k, d_k in density.shells:
        r_k = dist[k][0] if k in dist else 0.0
        recs.append(ShellRecord(k, buckets.bucket_of(k), n_k, d_k, lam.get(k, math.nan), r_k))
    agg = {}
    for name, ks in buckets.items():
        rows = [r for r in recs if r.k in ks]
        if not rows:
            continue
        lams = [r.lambda2 for r in rows if not math.isnan(r.lambda2)]
        agg[name] = {
            "count": len(rows),
            "n_mean": float(np.mean([r.n_k for r in rows])),
            "d_mean": float(np.mean([r.d_k for r in rows])),
            "lambda2_mean": float(np.mean(lams)) if lams else None,
            "lambda2_sd": float(np.std(lams)) if lams else None,
            "r_mean": _json_float(float(np.mean([r.r_k for r in rows]))),
        }
    return ShellProfile(tuple(recs), buckets.as_dict(), agg, x)


@dataclass(frozen=True)
class RccVerdict:
    has_rcc: bool
    property1_ok: bool
    property2_ok: bool
    property3_ok: bool
    rcc_members: frozenset
    degenerate: bool = False
    reason: str = ""
    profile: ShellProfile | None = field(default=None, repr=False)
    criteria: RccCriteria | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        crit = self.criteria or RccCriteria()
        out = {
            "has_rcc": self.has_rcc,
            "degenerate": self.degenerate,
            "reason": self.reason,
            "criteria": {
                "eigengap_threshold": crit.eigengap_threshold,
                "distance_threshold": crit.distance_threshold,
                "target_core_density": crit.target_core_density,
                "strict": crit.strict,
            },
            "property1_ok": self.property1_ok,
            "property2_ok": self.property2_ok,
            "property3_ok": self.property3_ok,
            "rcc_members": sorted(self.rcc_members),
        }
        if self.profile is not None:
            out["reference_core"] = self.profile.reference_core
            out["buckets"] = self.profile.buckets
            out["bucket_aggregates"] = self.profile.bucket_aggregates
            out["shells"] = [r.as_dict() for r in self.profile.records]
        return out


def detect_rcc(g: Graph, criteria: RccCriteria | None = None,
               threads: int | None = None) -> RccVerdict:
    """Judge whether ``g`` holds a rich centrality club.

    ``rcc_members`` is the innermost shell when the verdict is positive.
    """
    criteria = criteria or RccCriteria()
    d = core_numbers(g)
    if d.max_core < 2:
        return RccVerdict(False, False, False, False, frozenset(),
                          reason=f"max core {d.max_core} < 2", criteria=criteria)
    density = density_profile(g, d)
    profile = shell_profile(g, d, criteria, threads, density=density)
    alpha = criteria.eigengap_threshold
    checked = [r for r in profile.records
               if criteria.strict or r.bucket in ("inner", "mid")]
    p2 = all(r.lambda2 > alpha for r in checked if not math.isnan(r.lambda2))
    p3 = all(r.r_k < criteria.distance_threshold for r in profile.records
             if r.k < profile.reference_core)
    p1 = density.property1_ok
    has = p1 and p2 and p3
    failed = [name for name, ok in (("density", p1), ("eigengap", p2), ("distance", p3)) if not ok]
    reason = "all properties hold" if has else "failed: " + ", ".join(failed)
    members = frozenset(int(v) for v in d.shell(d.max_core)) if has else frozenset()
    return RccVerdict(has, p1, p2, p3, members, degenerate=density.degenerate,
                      reason=reason, profile=profile, criteria=criteria)


@dataclass(frozen=True)
class LemmaResult:
    core: int | None
    estimates: dict  # shell -> log n_k / log d_k, None when undefined
    excluded: tuple  # shells whose estimate is undefined
    witnesses: dict  # shell y -> shell z satisfying the inequality for the returned core


def path_length_estimate(n_k: float, d_k: float) -> float | None:
    """Random-graph average distance ``log n / log d``; None unless ``d > 1``."""
    if d_k <= 1 or n_k <= 1:
        return None
    return math.log(n_k) / math.log(d_k)


def lemma_scan(shell_stats: dict, r) -> LemmaResult:
    """Core-locating scan over precomputed shell statistics.

    ``shell_stats`` maps shell index to ``(n_k, d_k)``; ``r(y, z)`` gives
    the mean hop distance from shell ``y`` to core ``z``.  Candidates ``x``
    are tried from the innermost shell outwards; ``x`` qualifies when every
    lower shell ``y`` satisfies

        log n_y / log d_y  >  r(y, z) + log n_z / log d_z

    for at least one shell ``z >= x``.  A candidate needs at least one
    lower shell with a defined estimate, so the outermost shell never
    qualifies vacuously.
    """
    shells = sorted(shell_stats, reverse=True)
    est = {k: path_length_estimate(*shell_stats[k]) for k in shells}
    excluded = tuple(k for k in shells if est[k] is None)
    for x in shells:
        lower = [y for y in shells if y < x and est[y] is not None]
        uppers = [z for z in shells if z >= x and est[z] is not None]
        if not lower or not uppers:
            continue
        witnesses = {}
        for y in lower:
            z = next((z for z in uppers if est[y] > r(y, z) + est[z]), None)
            if z is None:
                break
            witnesses[y] = z
        else:
            return LemmaResult(x, est, excluded, witnesses)
    return LemmaResult(None, est, excluded, {})


def lemma_condition(g: Graph, d: CoreDecomposition | None = None,
                    edges: str = "incident") -> LemmaResult:
    """Locate the core expected to hold the high-centrality vertices.

    Shell statistics ``(n_k, d_k)`` come from the shell subgraphs of ``g``
    and distances from multi-source BFS; see :func:`lemma_scan` for the
    condition.  By default a shell subgraph keeps only edges touching the
    shell, so the path-length estimate of an outer shell is not inflated
    by the dense core its neighbours belong to.  Shells with ``d_k <= 1``
    have no estimate and are skipped with a warning.
    """
    d = d if d is not None else core_numbers(g)
    stats = {}
    for k in d.nonempty_shells:
        sub = shell_subgraph(g, d, k, edges=edges)
        stats[k] = (sub.n_k, sub.d_k)
    dists = {}

    def r(y, z):
        if z not in dists:
            dists[z] = shell_to_core_distance(g, d, z)
        return dists[z][y][0]

    res = lemma_scan(stats, r)
    if res.excluded:
        logger.warning("shells %s have mean degree <= 1; skipped", list(res.excluded))
    return res
