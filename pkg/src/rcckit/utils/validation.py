"""Input coercion shared by the estimators and the command line."""

from __future__ import annotations

import os
from numbers import Integral, Real

import numpy as np
import scipy.sparse as sp

from rcckit.graph import EmptyGraphError, Graph, read_edge_list


def check_graph(X, allow_empty: bool = False) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a Graph, an edge-list path, an ``(m, 2)`` integer array of
    edges, a square sparse or dense adjacency matrix, or any object with
    ``nodes()`` and ``edges()`` methods (for example a networkx graph).
    """
    if isinstance(X, Graph):
        g = X
    elif isinstance(X, (str, os.PathLike)):
        g = read_edge_list(X)
    elif hasattr(X, "nodes") and hasattr(X, "edges") and callable(X.edges):
        nodes = list(X.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        pairs = [(index[u], index[v]) for u, v in X.edges()]
        g = Graph.from_edges(pairs, n=len(nodes), labels=nodes)
    elif sp.issparse(X):
        g = _from_matrix(sp.csr_matrix(X))
    else:
        arr = np.asarray(X)
        if arr.ndim == 2 and arr.shape[0] == arr.shape[1] and arr.shape[1] != 2:
            g = _from_matrix(sp.csr_matrix(arr))
        elif arr.ndim == 2 and arr.shape[1] == 2 or arr.size == 0:
            if arr.size and not np.issubdtype(arr.dtype, np.integer):
                raise TypeError("edge arrays must hold integer vertex ids")
            g = Graph.from_edges(arr.reshape(-1, 2).astype(np.int64))
        else:
            raise TypeError(f"cannot interpret object of shape {arr.shape} as a graph")
    if not allow_empty and g.node_count == 0:
        raise EmptyGraphError("graph has no vertices")
    return g


def _from_matrix(a: sp.csr_matrix) -> Graph:
    if a.shape[0] != a.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if (a != a.T).nnz:
        raise ValueError("adjacency matrix must be symmetric")
    coo = sp.triu(a, k=1).tocoo()
    return Graph.from_edges(np.stack([coo.row, coo.col], axis=1), n=a.shape[0])


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_fraction(value, name: str, low: float = 0.0, high: float = 1.0,
                   closed_high: bool = False) -> float:
    ok = isinstance(value, Real) and low < value and (value <= high if closed_high else value < high)
    if not ok:
        bracket = "]" if closed_high else ")"
        raise ValueError(f"{name} must lie in ({low}, {high}{bracket}, got {value!r}")
    return float(value)
