"""k-core / k-shell decomposition and shell-induced subgraphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from rcckit.graph import Graph

__all__ = [
    "CoreDecomposition",
    "ShellSubgraph",
    "ShellBuckets",
    "EmptyShellError",
    "core_numbers",
    "k_core",
    "shell_subgraph",
    "shell_buckets",
]


class EmptyShellError(ValueError):
    """Raised when a requested shell has no vertices."""


@dataclass(frozen=True)
class CoreDecomposition:
    """Core number of every vertex plus the induced shell partition."""

    core_number: np.ndarray
    max_core: int
    shells: dict = field(repr=False)

    @classmethod
    def from_core_numbers(cls, core: np.ndarray) -> "CoreDecomposition":
        core = np.asarray(core, dtype=np.int64)
        core.setflags(write=False)
        shells = {}
        if len(core):
            order = np.argsort(core, kind="stable")
            values, starts = np.unique(core[order], return_index=True)
            bounds = list(starts[1:]) + [len(core)]
            for k, a, b in zip(values.tolist(), starts.tolist(), bounds):
                shells[k] = np.sort(order[a:b])
        max_core = int(core.max()) if len(core) else 0
        return cls(core, max_core, shells)

    def shell(self, k: int) -> np.ndarray:
        return self.shells.get(k, np.zeros(0, dtype=np.int64))

    def k_core(self, k: int) -> np.ndarray:
        return k_core(self, k)

    @property
    def nonempty_shells(self) -> list[int]:
        """Indices of non-empty shells, innermost first."""
        return sorted(self.shells, reverse=True)


def core_numbers(g: Graph) -> CoreDecomposition:
    """Core numbers by bucket peeling in O(n + m).

    Vertices are kept in an array sorted by current degree with a bucket
    start table, so each degree decrement is a constant-time swap.
    """
    n = g.node_count
    deg = g.degrees.astype(np.int64).tolist()
    if n == 0:
        return CoreDecomposition.from_core_numbers(np.zeros(0, dtype=np.int64))
    maxdeg = max(deg)
    counts = [0] * (maxdeg + 1)
    for d in deg:
        counts[d] += 1
    bin_start = [0] * (maxdeg + 1)
    start = 0
    for d in range(maxdeg + 1):
        bin_start[d] = start
        start += counts[d]
    pos = [0] * n
    vert = [0] * n
    fill = bin_start[:]
    for v in range(n):
        pos[v] = fill[deg[v]]
        vert[pos[v]] = v
        fill[deg[v]] += 1
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    vert[pu], vert[pw] = w, u
                    pos[u], pos[w] = pw, pu
                bin_start[du] += 1
                deg[u] = du - 1
    return CoreDecomposition.from_core_numbers(np.asarray(deg, dtype=np.int64))


def k_core(d: CoreDecomposition, k: int) -> np.ndarray:
    """Vertices with core number at least ``k`` (empty past the max core)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return np.flatnonzero(d.core_number >= k)


@dataclass(frozen=True)
class ShellSubgraph:
    shell_index: int
    members: np.ndarray
    graph: Graph
    n_k: int
    d_k: float


def shell_subgraph(g: Graph, d: CoreDecomposition, k: int, edges: str = "induced") -> ShellSubgraph:
    """Subgraph on shell ``k`` together with all neighbours of it.

    With ``edges="induced"`` every edge among the member set is kept,
    including edges between two neighbours outside shell ``k``.  With
    ``edges="incident"`` only edges touching a shell-``k`` vertex are kept.
    """
    if edges not in ("induced", "incident"):
        raise ValueError("edges must be 'induced' or 'incident'")
    shell = d.shell(k)
    if len(shell) == 0:
        raise EmptyShellError(f"shell {k} is empty")
    parts = [shell] + [g.neighbors(v) for v in shell.tolist()]
    sub, members = g.subgraph(np.concatenate(parts))
    if edges == "incident":
        in_shell = d.core_number[members] == k
        e = sub.edges()
        keep = in_shell[e[:, 0]] | in_shell[e[:, 1]]
        sub = Graph.from_edges(e[keep], n=sub.node_count, labels=sub.labels)
    n_k = sub.node_count
    return ShellSubgraph(k, members, sub, n_k, 2.0 * sub.edge_count / n_k)


@dataclass(frozen=True)
class ShellBuckets:
    """Non-empty shell indices split innermost-first into three groups."""

    inner: tuple
    mid: tuple
    outer: tuple
    degenerate: bool

    def as_dict(self) -> dict:
        return {"inner": list(self.inner), "mid": list(self.mid), "outer": list(self.outer)}

    def items(self):
        return [("inner", self.inner), ("mid", self.mid), ("outer", self.outer)]

    def bucket_of(self, k: int) -> str | None:
        for name, ks in self.items():
            if k in ks:
                return name
        return None


def shell_buckets(d: CoreDecomposition | list) -> ShellBuckets:
    """25/25/50 split of the non-empty shells, innermost first.

    Bucket sizes are ``ceil(0.25 * s)`` for the inner and mid groups; the
    outer group takes what remains.  With fewer than three shells the
    result is flagged degenerate: one shell goes to the inner bucket and a
    second, if present, to the outer bucket (it is the periphery).
    """
    ks = d.nonempty_shells if isinstance(d, CoreDecomposition) else sorted(d, reverse=True)
    s = len(ks)
    if s == 0:
        raise EmptyShellError("decomposition has no shells")
    if s == 2:
        return ShellBuckets((ks[0],), (), (ks[1],), degenerate=True)
    q = math.ceil(0.25 * s)
    inner = tuple(ks[:q])
    mid = tuple(ks[q:2 * q])
    outer = tuple(ks[2 * q:])
    return ShellBuckets(inner, mid, outer, degenerate=s < 3)
