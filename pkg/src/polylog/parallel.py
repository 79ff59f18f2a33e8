"""Ordered worker-pool map used for the per-vertex / per-edge fan-out.

Results always come back in input order, so reductions over them are
reproducible for every worker count.
"""

from __future__ import annotations

import atexit
import os
from concurrent.futures import ProcessPoolExecutor

THREADS_ENV = "POLYLOG_THREADS"

_pools: dict[int, ProcessPoolExecutor] = {}


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {env!r}") from None
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be a positive integer, got {env!r}")
        return n
    return os.cpu_count() or 1


def _pool(workers: int) -> ProcessPoolExecutor:
    pool = _pools.get(workers)
    if pool is None:
        pool = _pools[workers] = ProcessPoolExecutor(max_workers=workers)
    return pool


@atexit.register
def shutdown_pools() -> None:
    for pool in _pools.values():
        pool.shutdown(cancel_futures=True)
    _pools.clear()


def ordered_map(fn, items, threads: int | None = 1) -> list:
    """``[fn(x) for x in items]``, optionally spread over worker processes.

    ``threads=None`` means :func:`default_threads`.  ``fn`` and the items
    must be picklable when ``threads > 1``.
    """
    items = list(items)
    if threads is None:
        threads = default_threads()
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * threads))
    return list(_pool(threads).map(fn, items, chunksize=chunk))
