"""Uniform grids and an order-independent parallel max over grid points."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import repeat

from gmpy2 import mpfr


def grid_point(M, k, count):
    """``x_k = M (2k - count + 1) / (count - 1)``, endpoint-inclusive and symmetric.

    Evaluated in the active context, so ``x_k == -x_{count-1-k}`` exactly.
    """
    return mpfr(M) * (2 * k - count + 1) / (count - 1)


def _chunk_max(point_error, start, stop):
    best, best_k = None, None
    for k in range(start, stop):
        e = point_error(k)
        if best is None or e > best:
            best, best_k = e, k
    return best, best_k


def grid_argmax(point_error, count, workers=None):
    """``(max_k point_error(k), argmax)`` over ``k = 0..count-1``.

    Ties resolve to the smallest index, so the answer does not depend on how
    the grid is split across ``workers`` processes.  ``point_error`` must be
    picklable when ``workers > 1``.
    """
    workers = max(1, min(int(workers or 1), count))
    if workers == 1:
        return _chunk_max(point_error, 0, count)
    starts = [count * i // workers for i in range(workers)]
    stops = starts[1:] + [count]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_chunk_max, repeat(point_error), starts, stops))
    return max(parts, key=lambda part: (part[0], -part[1]))
