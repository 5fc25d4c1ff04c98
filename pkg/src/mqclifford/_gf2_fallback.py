"""Pure numpy GF(2) kernels, used when the compiled extension is unavailable."""

import numpy as np


def matmul(a, b):
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    # float64 BLAS is exact for integer sums below 2**53
    prod = a.astype(np.float64) @ b.astype(np.float64)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


def matvec(a, v):
    a = np.asarray(a, dtype=np.uint8)
    v = np.asarray(v, dtype=np.uint8).ravel()
    if a.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {v.shape}")
    return ((a.astype(np.float64) @ v.astype(np.float64)).astype(np.int64) & 1).astype(np.uint8)


def _eliminate(m, ncols):
    rows = m.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        hit = np.flatnonzero(m[:, c])
        hit = hit[hit != r]
        if hit.size:
            m[hit] ^= m[r]
        pivots.append(c)
        r += 1
    return tuple(pivots)


def rref(a):
    m = np.array(a, dtype=np.uint8, copy=True)
    pivots = _eliminate(m, m.shape[1])
    return m, pivots


def inverse(a):
    a = np.asarray(a, dtype=np.uint8)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError(f"inverse needs a square matrix, got {a.shape}")
    aug = np.zeros((n, 2 * n), dtype=np.uint8)
    aug[:, :n] = a
    aug[np.arange(n), n + np.arange(n)] = 1
    pivots = _eliminate(aug, n)
    if len(pivots) < n:
        return None
    return aug[:, n:].copy()
