"""Deterministic partitioned summation.

Work is cut into fixed index ranges, each range is summed on its own, and
the partial sums are combined in a fixed pairwise tree.  The result does
not depend on how many threads computed the partials.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

CHUNK = 1 << 16


def pairwise(values) -> float:
    vals = [float(v) for v in values]
    if not vals:
        return 0.0
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def ranges(total: int, chunk: int = CHUNK) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def partitioned_sum(fn: Callable[[int, int], float], total: int, threads: int = 1,
                    chunk: int = CHUNK) -> float:
    """Sum fn(lo, hi) over fixed ranges covering [0, total)."""
    parts = ranges(total, chunk)
    if threads > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda lh: fn(*lh), parts))
    else:
        partials = [fn(lo, hi) for lo, hi in parts]
    return pairwise(partials)


def array_sum(values: np.ndarray, threads: int = 1, chunk: int = CHUNK) -> float:
    values = np.asarray(values, dtype=np.float64)
    return partitioned_sum(lambda lo, hi: float(np.sum(values[lo:hi])), values.shape[0], threads, chunk)


def array_mean(values: np.ndarray, threads: int = 1, chunk: int = CHUNK) -> float:
    return array_sum(values, threads, chunk) / values.shape[0]
