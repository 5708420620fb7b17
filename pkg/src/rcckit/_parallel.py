import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

THREADS_ENV = "RCC_KIT_THREADS"

# Work is always split into the same chunks regardless of the worker count,
# and partial results are combined in chunk order, so floating point sums do
# not depend on scheduling.
CHUNK = 256


def resolve_threads(threads=None):
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, int(threads))


def ordered_map(func, items, threads=None):
    """``list(map(func, items))`` on up to ``threads`` workers, order preserved."""
    items = list(items)
    threads = resolve_threads(threads)
    if threads == 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def source_chunks(n):
    return [np.arange(i, min(i + CHUNK, n), dtype=np.int64) for i in range(0, n, CHUNK)]
