"""Compiled breadth-first-search kernels over CSR arrays."""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def bfs_distances(indptr, indices, sources):
    """Hop distance from the nearest of ``sources``; -1 when unreachable."""
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] < 0:
                dist[w] = dv
                queue[tail] = w
                tail += 1
    return dist


@njit(cache=True, nogil=True)
def distance_sums(indptr, indices, sources):
    """Sum of hop distances from each source to every vertex it reaches."""
    n = len(indptr) - 1
    out = np.zeros(len(sources), dtype=np.int64)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for i in range(len(sources)):
        s = sources[i]
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        total = 0
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v] + 1
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = dv
                    total += dv
                    queue[tail] = w
                    tail += 1
        out[i] = total
        for k in range(tail):
            dist[queue[k]] = -1
    return out


@njit(cache=True, nogil=True)
def brandes_partial(indptr, indices, sources):
    """Brandes dependency accumulation from ``sources`` (ordered-pair counts)."""
    n = len(indptr) - 1
    bc = np.zeros(n, dtype=np.float64)
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.float64)
    delta = np.zeros(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    for i in range(len(sources)):
        s = sources[i]
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v] + 1
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = dv
                    order[tail] = w
                    tail += 1
                if dist[w] == dv:
                    sigma[w] += sigma[v]
        for k in range(tail - 1, -1, -1):
            w = order[k]
            dw = dist[w] - 1
            coeff = (1.0 + delta[w]) / sigma[w]
            for j in range(indptr[w], indptr[w + 1]):
                v = indices[j]
                if dist[v] == dw:
                    delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
        for k in range(tail):
            w = order[k]
            dist[w] = -1
            sigma[w] = 0.0
            delta[w] = 0.0
    return bc


@njit(cache=True, nogil=True)
def flood_levels(indptr, indices, seeds):
    """Per-round count of newly informed vertices under flood broadcast."""
    dist = bfs_distances(indptr, indices, seeds)
    top = 0
    for d in dist:
        if d > top:
            top = d
    counts = np.zeros(top + 1, dtype=np.int64)
    for d in dist:
        if d >= 0:
            counts[d] += 1
    return counts
