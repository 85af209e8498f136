"""Pure-Python (numpy) Laplace step for DFT-matrix minors.

A minor of size ``s`` with sorted rows ``R`` and columns ``C`` expands along
its last row::

    det(R, C) = sum_p (-1)^(s-1+p) * w^(R[-1]*C[p]) * det(R[:-1], C minus C[p])

Every minor is an integer combination of n-th roots of unity, so it is held
as a length-``n`` int64 vector in the group ring ``Z[x]/(x^n - 1)``.
Multiplying by ``w^e`` is a cyclic shift by ``e``.

Arguments, for ``NR`` row subsets and ``NC`` column subsets of size ``s``:

``prev``      (NR', NC', n) table of size ``s-1`` minors
``drop_last`` (NR,) index of ``R[:-1]`` among the size ``s-1`` subsets
``last``      (NR,) the value ``R[-1]``
``drop_col``  (NC, s) index of ``C minus C[p]`` among size ``s-1`` subsets
``colval``    (NC, s) the value ``C[p]``
"""

import numpy as np

# bound on NR*NC*n elements materialized per gather
_BLOCK = 1 << 22


def laplace_step(prev, drop_last, last, drop_col, colval, n):
    nr = len(drop_last)
    nc, s = drop_col.shape
    out = np.zeros((nr, nc, n), dtype=np.int64)
    step = max(1, _BLOCK // max(1, nc * n))
    t = np.arange(n)
    for lo in range(0, nr, step):
        hi = min(nr, lo + step)
        rows = drop_last[lo:hi, None]
        lastv = last[lo:hi, None]
        block = out[lo:hi]
        for p in range(s):
            src = prev[rows, drop_col[None, :, p]]
            shift = (lastv * colval[None, :, p]) % n
            src = np.take_along_axis(src, (t - shift[..., None]) % n, axis=2)
            if (s - 1 + p) % 2:
                block -= src
            else:
                block += src
    return out
