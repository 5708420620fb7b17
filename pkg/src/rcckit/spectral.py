"""Normalised Laplacian spectra, eigengaps and Cheeger bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from rcckit._parallel import ordered_map
from rcckit.cores import CoreDecomposition, shell_buckets, shell_subgraph
from rcckit.graph import EmptyGraphError, Graph, connected_components

__all__ = [
    "SpectralResult",
    "ShellEigengap",
    "EigengapProfile",
    "UndefinedEigengap",
    "normalized_laplacian",
    "eigengap",
    "cheeger_constant",
    "shell_eigengap_profile",
]

DENSE_THRESHOLD = 500


class UndefinedEigengap(ValueError):
    """Raised when a graph has fewer than two non-isolated vertices."""


def normalized_laplacian(g: Graph) -> tuple[sp.csr_matrix, np.ndarray]:
    """``I - D^-1/2 A D^-1/2`` over the non-isolated vertices of ``g``.

    Returns the sparse matrix and the ids of the vertices it covers
    (isolated vertices are dropped because ``D^-1/2`` is undefined there).
    """
    if g.node_count == 0:
        raise EmptyGraphError("graph has no vertices")
    keep = np.flatnonzero(g.degrees > 0)
    if len(keep) < g.node_count:
        g, _ = g.subgraph(keep)
    if g.node_count == 0:
        raise EmptyGraphError("graph has no edges")
    a = g.adjacency_matrix()
    inv_sqrt = 1.0 / np.sqrt(g.degrees.astype(np.float64))
    scaled = sp.diags(inv_sqrt) @ a @ sp.diags(inv_sqrt)
    lap = sp.identity(g.node_count, format="csr") - scaled
    return sp.csr_matrix(lap), keep


@dataclass(frozen=True)
class SpectralResult:
    lambda2: float
    cheeger_lower: float
    cheeger_upper: float
    component_count: int
    component_lambda2: tuple = field(default=())
    isolated_removed: int = 0

    def min_component_lambda2(self, min_size: int = 3) -> float:
        """Smallest eigengap among components with at least ``min_size`` vertices
        (nan when there are none)."""
        vals = [lam for size, lam in self.component_lambda2 if size >= min_size]
        return min(vals) if vals else math.nan


def _connected_lambda2(g: Graph, dense_threshold: int, tol: float, maxiter: int, seed: int) -> float:
    n = g.node_count
    if n == 2:
        return 2.0
    lap, _ = normalized_laplacian(g)
    if n <= dense_threshold:
        vals = la.eigvalsh(lap.toarray(), subset_by_index=[0, 1])
        return float(max(vals[1], 0.0))
    # Deflate the known null vector D^1/2 1 and find the top of 2I - L,
    # whose largest eigenvalue is 2 - lambda2.
    null = np.sqrt(g.degrees.astype(np.float64))
    null /= np.linalg.norm(null)

    def matvec(x):
        x = np.asarray(x).ravel()
        return 2.0 * x - lap @ x - 2.0 * null * (null @ x)

    op = spla.LinearOperator((n, n), matvec=matvec, dtype=np.float64)
    v0 = np.random.default_rng(seed).standard_normal(n)
    top = spla.eigsh(op, k=1, which="LA", tol=tol, maxiter=maxiter, v0=v0,
                     return_eigenvectors=False)
    return float(min(max(2.0 - top[0], 0.0), 2.0))


def eigengap(g: Graph, dense_threshold: int = DENSE_THRESHOLD, tol: float = 1e-8,
             maxiter: int = 5000, seed: int = 0) -> SpectralResult:
    """Second-smallest normalised-Laplacian eigenvalue with Cheeger bounds.

    Isolated vertices are removed first.  The eigengap of a disconnected
    graph is 0; the per-component values are kept in ``component_lambda2``
    as ``(size, lambda2)`` pairs, components of size one excluded.
    """
    keep = np.flatnonzero(g.degrees > 0)
    isolated = g.node_count - len(keep)
    if len(keep) < 2:
        raise UndefinedEigengap("eigengap needs at least two non-isolated vertices")
    if isolated:
        g, _ = g.subgraph(keep)
    comp = connected_components(g)
    ncomp = int(comp.max()) + 1
    per_comp = []
    if ncomp == 1:
        lam = _connected_lambda2(g, dense_threshold, tol, maxiter, seed)
        per_comp.append((g.node_count, lam))
    else:
        for c in range(ncomp):
            sub, _ = g.subgraph(np.flatnonzero(comp == c))
            per_comp.append((sub.node_count, _connected_lambda2(sub, dense_threshold, tol, maxiter, seed)))
        lam = 0.0
    return SpectralResult(
        lambda2=lam,
        cheeger_lower=lam / 2.0,
        cheeger_upper=math.sqrt(2.0 * lam),
        component_count=ncomp,
        component_lambda2=tuple(per_comp),
        isolated_removed=isolated,
    )


def cheeger_constant(g: Graph, max_nodes: int = 20) -> float:
    """Exact conductance ``min cut(S) / min(vol S, vol S')`` by enumerating all cuts.

    Exponential in the vertex count; refused above ``max_nodes``.
    """
    n = g.node_count
    if n < 2:
        raise ValueError("need at least two vertices")
    if n > max_nodes:
        raise ValueError(f"exhaustive cut enumeration refused for n={n} > {max_nodes}")
    # vertex n-1 always on the complement side, so each cut is seen once
    masks = np.arange(1, 2 ** (n - 1), dtype=np.int64)
    member = ((masks[:, None] >> np.arange(n - 1)) & 1).astype(bool)
    member = np.concatenate([member, np.zeros((len(masks), 1), dtype=bool)], axis=1)
    deg = g.degrees.astype(np.float64)
    vol = member @ deg
    total = deg.sum()
    edges = g.edges()
    cut = (member[:, edges[:, 0]] != member[:, edges[:, 1]]).sum(axis=1)
    smaller = np.minimum(vol, total - vol)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(smaller > 0, cut / smaller, np.inf)
    return float(ratio.min())


@dataclass(frozen=True)
class ShellEigengap:
    k: int
    n_k: int
    d_k: float
    lambda2: float
    component_count: int

    def as_row(self) -> dict:
        return {"shell": self.k, "n_k": self.n_k, "d_k": self.d_k, "lambda2": self.lambda2}


@dataclass(frozen=True)
class EigengapProfile:
    shells: tuple
    buckets: dict
    excluded: tuple

    def by_shell(self) -> dict:
        return {rec.k: rec for rec in self.shells}


def _shell_record(g, d, min_size, dense_threshold, k):
    sub = shell_subgraph(g, d, k)
    if sub.n_k < min_size:
        return None
    res = eigengap(sub.graph, dense_threshold=dense_threshold, seed=k)
    lam = res.min_component_lambda2(min_size)
    if math.isnan(lam):
        return None
    return ShellEigengap(k, sub.n_k, sub.d_k, lam, res.component_count)


def shell_eigengap_profile(g: Graph, d: CoreDecomposition, min_size: int = 3,
                           dense_threshold: int = DENSE_THRESHOLD,
                           threads: int | None = None) -> EigengapProfile:
    """Eigengap of every shell subgraph, aggregated into inner/mid/outer buckets.

    A shell's value is the smallest eigengap over its components of at
    least ``min_size`` vertices.  Shells without such a component are
    excluded and listed in ``excluded``.  Bucket aggregates map the bucket
    name to ``(mean, sd, count)``.
    """
    ks = d.nonempty_shells
    recs = ordered_map(partial(_shell_record, g, d, min_size, dense_threshold), ks, threads)
    shells = tuple(r for r in recs if r is not None)
    excluded = tuple(k for k, r in zip(ks, recs) if r is None)
    lam_of = {r.k: r.lambda2 for r in shells}
    buckets = {}
    for name, members in shell_buckets(d).items():
        vals = [lam_of[k] for k in members if k in lam_of]
        if vals:
            buckets[name] = (float(np.mean(vals)), float(np.std(vals)), len(vals))
    return EigengapProfile(shells, buckets, excluded)
