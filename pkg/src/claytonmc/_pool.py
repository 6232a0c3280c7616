"""Process pools kept alive between calls, one per requested size."""

from __future__ import annotations

import atexit
import threading
from concurrent.futures import ProcessPoolExecutor

_pools = {}
_lock = threading.Lock()


def get_pool(workers):
    """A live ``ProcessPoolExecutor`` with exactly ``workers`` processes."""
    with _lock:
        pool = _pools.get(workers)
        if pool is None:
            pool = _pools[workers] = ProcessPoolExecutor(max_workers=workers)
        return pool


def shutdown_pools():
    with _lock:
        for pool in _pools.values():
            pool.shutdown(wait=True, cancel_futures=True)
        _pools.clear()


atexit.register(shutdown_pools)
