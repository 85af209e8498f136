# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Laplace step for DFT-matrix minors over the group ring Z[C_n].

Same contract as :func:`cyclominors._kernel_py.laplace_step`.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.intp_t ip


def laplace_step(const i64[:, :, ::1] prev,
                 const ip[::1] drop_last, const ip[::1] last,
                 const ip[:, ::1] drop_col, const ip[:, ::1] colval,
                 int n):
    cdef Py_ssize_t nr = drop_last.shape[0]
    cdef Py_ssize_t nc = drop_col.shape[0]
    cdef Py_ssize_t s = drop_col.shape[1]
    out_arr = np.zeros((nr, nc, n), dtype=np.int64)
    cdef i64[:, :, ::1] out = out_arr
    cdef Py_ssize_t ri, ci, p, t, u, shift, pr
    cdef i64 sgn
    cdef const i64* src
    cdef i64* dst
    with nogil:
        for ri in range(nr):
            pr = drop_last[ri]
            for ci in range(nc):
                dst = &out[ri, ci, 0]
                for p in range(s):
                    shift = (last[ri] * colval[ci, p]) % n
                    sgn = 1 if (s - 1 + p) % 2 == 0 else -1
                    src = &prev[pr, drop_col[ci, p], 0]
                    u = shift
                    for t in range(n):
                        dst[u] += sgn * src[t]
                        u += 1
                        if u == n:
                            u = 0
    return out_arr
