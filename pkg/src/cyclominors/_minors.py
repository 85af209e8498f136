"""Exhaustive tables of DFT-matrix minors, built level by level.

All minors of size ``s`` (every pair of sorted ``s``-subsets of rows and
columns, both in lexicographic order) are computed at once from the size
``s-1`` table by Laplace expansion in the integer group ring.  The step is
the hot loop; a compiled version is used when the extension is built,
otherwise the numpy fallback.  Set ``CYCLOMINORS_BACKEND=python`` to force
the fallback.
"""

from __future__ import annotations

import itertools
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from cyclominors import _kernel_py
from cyclominors.cyclotomic import field
from cyclominors.errors import UsageError

try:
    from cyclominors import _kernel as _kernel_c
except ImportError:  # extension not built
    _kernel_c = None

log = logging.getLogger(__name__)

# coefficient magnitudes are bounded by s! <= n!, which must fit in int64
MAX_TABLE_N = 20

BACKENDS = {"python": _kernel_py.laplace_step}
if _kernel_c is not None:
    BACKENDS["cython"] = _kernel_c.laplace_step


def default_backend() -> str:
    forced = os.environ.get("CYCLOMINORS_BACKEND")
    if forced:
        if forced not in BACKENDS:
            raise UsageError(f"CYCLOMINORS_BACKEND={forced!r} unavailable; have {sorted(BACKENDS)}")
        return forced
    return "cython" if "cython" in BACKENDS else "python"


@lru_cache(maxsize=None)
def subsets(n: int, s: int) -> tuple[np.ndarray, dict]:
    """All sorted s-subsets of range(n) in lexicographic order, and their index."""
    combos = list(itertools.combinations(range(n), s))
    arr = np.array(combos, dtype=np.intp).reshape(len(combos), s)
    return arr, {c: i for i, c in enumerate(combos)}


@lru_cache(maxsize=None)
def inner_subsets(n: int, k: int, w: int) -> np.ndarray:
    """(C(n,k), C(k,w)) indices of the w-subsets contained in each k-subset."""
    big, _ = subsets(n, k)
    _, index = subsets(n, w)
    if w > k:
        return np.zeros((len(big), 0), dtype=np.intp)
    picks = list(itertools.combinations(range(k), w))
    out = np.empty((len(big), len(picks)), dtype=np.intp)
    for i, row in enumerate(big.tolist()):
        for j, pick in enumerate(picks):
            out[i, j] = index[tuple(row[q] for q in pick)]
    return out


@lru_cache(maxsize=None)
def _step_indices(n: int, s: int):
    combos, _ = subsets(n, s)
    _, prev_index = subsets(n, s - 1)
    rows = combos.tolist()
    drop_last = np.array([prev_index[tuple(r[:-1])] for r in rows], dtype=np.intp)
    last = np.ascontiguousarray(combos[:, -1])
    drop_col = np.array([[prev_index[tuple(c[:p] + c[p + 1:])] for p in range(s)] for c in rows],
                        dtype=np.intp).reshape(len(rows), s)
    return drop_last, last, drop_col, np.ascontiguousarray(combos)


def reduction_matrix(n: int) -> np.ndarray:
    """(n, phi(n)) integer matrix sending a group-ring vector to power-basis coordinates."""
    f = field(n)
    return np.array(f.powers[:n], dtype=np.int64).reshape(n, f.phi)


def to_coords(values: np.ndarray, n: int) -> np.ndarray:
    return values @ reduction_matrix(n)


@dataclass
class MinorLevel:
    size: int
    rows: np.ndarray      # (N, size) row subsets, lexicographic
    values: np.ndarray    # (N, N, n) group-ring values, [row subset, col subset]
    nonzero: np.ndarray   # (N, N) bool


def _nonzero(values: np.ndarray, red: np.ndarray) -> np.ndarray:
    out = np.empty(values.shape[:2], dtype=bool)
    step = max(1, (1 << 22) // max(1, values.shape[1] * red.shape[1]))
    for lo in range(0, values.shape[0], step):
        out[lo:lo + step] = (values[lo:lo + step] @ red).any(axis=-1)
    return out


def iter_minor_levels(n: int, *, max_size: int | None = None, backend: str | None = None,
                      threads: int = 1):
    """Yield a :class:`MinorLevel` for each size 1..max_size (default n)."""
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    if n > MAX_TABLE_N:
        raise UsageError(f"exhaustive minor tables support n <= {MAX_TABLE_N}, got {n}")
    step = BACKENDS[backend or default_backend()]
    red = reduction_matrix(n)
    prev = np.zeros((1, 1, n), dtype=np.int64)
    prev[0, 0, 0] = 1
    top = n if max_size is None else min(n, max_size)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for s in range(1, top + 1):
            drop_last, last, drop_col, colval = _step_indices(n, s)
            if pool is None or len(drop_last) < 2 * threads:
                cur = step(prev, drop_last, last, drop_col, colval, n)
            else:
                bounds = np.linspace(0, len(drop_last), threads + 1, dtype=int)
                parts = pool.map(
                    lambda lh: step(prev, drop_last[lh[0]:lh[1]], last[lh[0]:lh[1]],
                                    drop_col, colval, n),
                    list(zip(bounds[:-1], bounds[1:])))
                cur = np.concatenate(list(parts), axis=0)
            log.debug("n=%d size=%d: %d minors", n, s, cur.shape[0] * cur.shape[1])
            yield MinorLevel(s, colval, cur, _nonzero(cur, red))
            prev = cur
    finally:
        if pool is not None:
            pool.shutdown()


def minor_count(n: int) -> int:
    return sum(math.comb(n, s) ** 2 for s in range(1, n + 1))
