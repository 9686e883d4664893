"""Ordered fan-out of independent trials.

Results come back in input order, and every trial carries its own derived
seed, so output never depends on the worker count.
"""

import os
from concurrent.futures import ProcessPoolExecutor

THREADS_ENV = "DPCOLOR_THREADS"


def resolve_threads(threads=None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def map_ordered(fn, items, threads: int = 1) -> list:
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
