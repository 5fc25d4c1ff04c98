# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Bit-packed GF(2) kernels.

Rows are packed into 64-bit words, so a row operation costs ``cols / 64``
word XORs. Same call signatures as :mod:`mqclifford._gf2_fallback`.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, uint8_t

cnp.import_array()


cdef inline Py_ssize_t _words(Py_ssize_t cols) noexcept nogil:
    return (cols + 63) >> 6


cdef uint64_t[:, ::1] _pack(const uint8_t[:, :] a):
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t nw = _words(cols)
    cdef uint64_t[:, ::1] out = np.zeros((rows, max(nw, 1)), dtype=np.uint64)
    cdef Py_ssize_t i, j
    for i in range(rows):
        for j in range(cols):
            if a[i, j] & 1:
                out[i, j >> 6] |= (<uint64_t>1) << (j & 63)
    return out


cdef cnp.ndarray _unpack(uint64_t[:, ::1] p, Py_ssize_t rows, Py_ssize_t cols):
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((rows, cols), dtype=np.uint8)
    cdef uint8_t[:, ::1] ov = out
    cdef Py_ssize_t i, j
    for i in range(rows):
        for j in range(cols):
            ov[i, j] = (p[i, j >> 6] >> (j & 63)) & 1
    return out


def matmul(a, b):
    a = np.ascontiguousarray(a, dtype=np.uint8)
    b = np.ascontiguousarray(b, dtype=np.uint8)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    cdef const uint8_t[:, :] av = a
    cdef uint64_t[:, ::1] bp = _pack(b)
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1], cols = b.shape[1]
    cdef Py_ssize_t nw = bp.shape[1]
    cdef uint64_t[:, ::1] cp = np.zeros((n, nw), dtype=np.uint64)
    cdef Py_ssize_t i, k, w
    cdef uint64_t mask
    with nogil:
        for i in range(n):
            for k in range(m):
                # branch-free: random bits defeat the branch predictor
                mask = -(<uint64_t>(av[i, k] & 1))
                for w in range(nw):
                    cp[i, w] ^= bp[k, w] & mask
    return _unpack(cp, n, cols)


def matvec(a, v):
    """``a @ v`` over F2 for a 1-D vector ``v``."""
    a = np.ascontiguousarray(a, dtype=np.uint8)
    v = np.ascontiguousarray(v, dtype=np.uint8).ravel()
    if a.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {v.shape}")
    cdef const uint8_t[:, ::1] av = a
    cdef const uint8_t[::1] vv = v
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1], i, k
    out = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] ov = out
    cdef uint8_t acc
    with nogil:
        for i in range(n):
            acc = 0
            for k in range(m):
                acc ^= av[i, k] & vv[k]
            ov[i] = acc & 1
    return out


cdef Py_ssize_t _eliminate(uint64_t[:, ::1] p, Py_ssize_t rows, Py_ssize_t cols,
                           Py_ssize_t[::1] pivots) noexcept nogil:
    """In-place Gauss-Jordan; lowest-index pivot row wins. Returns rank."""
    cdef Py_ssize_t nw = p.shape[1]
    cdef Py_ssize_t r = 0, c, i, w, piv
    cdef uint64_t bit, tmp
    for c in range(cols):
        if r == rows:
            break
        bit = (<uint64_t>1) << (c & 63)
        piv = -1
        for i in range(r, rows):
            if p[i, c >> 6] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for w in range(nw):
                tmp = p[r, w]
                p[r, w] = p[piv, w]
                p[piv, w] = tmp
        for i in range(rows):
            if i != r and (p[i, c >> 6] & bit):
                for w in range(nw):
                    p[i, w] ^= p[r, w]
        pivots[r] = c
        r += 1
    return r


def rref(a):
    a = np.ascontiguousarray(a, dtype=np.uint8)
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef uint64_t[:, ::1] p = _pack(a)
    cdef Py_ssize_t[::1] piv = np.zeros(max(min(rows, cols), 1), dtype=np.intp)
    cdef Py_ssize_t r
    with nogil:
        r = _eliminate(p, rows, cols, piv)
    return _unpack(p, rows, cols), tuple(int(piv[i]) for i in range(r))


def inverse(a):
    a = np.ascontiguousarray(a, dtype=np.uint8)
    cdef Py_ssize_t n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"inverse needs a square matrix, got {a.shape}")
    aug = np.zeros((n, 2 * n), dtype=np.uint8)
    aug[:, :n] = a
    aug[np.arange(n), n + np.arange(n)] = 1
    cdef uint64_t[:, ::1] p = _pack(aug)
    cdef Py_ssize_t[::1] piv = np.zeros(max(n, 1), dtype=np.intp)
    cdef Py_ssize_t r
    with nogil:
        r = _eliminate(p, n, n, piv)
    if r < n:
        return None
    return _unpack(p, n, 2 * n)[:, n:].copy()
