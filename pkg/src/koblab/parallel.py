"""Thread-cap plumbing and a deterministic parallel map.

Optimizer restarts and probe-vector sweeps are independent pure function
calls, so they may run on a thread pool.  Results are always collected in
submission order and ties are broken by index, which keeps every caller
deterministic no matter how many threads are active.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

_T = TypeVar("_T")
_R = TypeVar("_R")

_ENV_VAR = "KOBLAB_THREADS"
_thread_cap: int | None = None


def set_thread_cap(threads: int | None) -> None:
    """Set the process-wide parallelism cap (None defers to KOBLAB_THREADS)."""
    global _thread_cap
    if threads is not None and threads < 1:
        raise ValueError("thread cap must be >= 1")
    _thread_cap = threads


def thread_cap() -> int:
    env = os.environ.get(_ENV_VAR)
    if _thread_cap is not None:
        return _thread_cap
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


def pmap(fn: Callable[[_T], _R], items: Sequence[_T]) -> list[_R]:
    """Map fn over items, in order, using at most thread_cap() workers."""
    cap = min(thread_cap(), max(1, len(items)))
    if cap == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))


def rng_for(*parts: object) -> np.random.Generator:
    """Deterministic generator keyed by a tuple of hashable descriptors."""
    digest = hashlib.sha256("|".join(repr(p) for p in parts).encode()).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "big"))
