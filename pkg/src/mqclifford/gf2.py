"""Dense linear algebra over F2 and symmetric two-factor decomposition.

Bit matrices are plain ``numpy.uint8`` arrays holding 0/1 entries. Functions
here never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend

BitMatrix = np.ndarray


class Singular(ValueError):
    """Raised when a matrix that must be invertible over F2 is not."""


def as_bits(a, name: str = "matrix") -> BitMatrix:
    """Validate and coerce ``a`` to a 2-D uint8 0/1 array."""
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if arr.dtype == bool:
        return arr.astype(np.uint8)
    if not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} entries must be 0 or 1")
    return arr.astype(np.uint8)


def identity(n: int) -> BitMatrix:
    return np.eye(n, dtype=np.uint8)


def is_symmetric(a: BitMatrix) -> bool:
    return a.shape[0] == a.shape[1] and bool(np.array_equal(a, a.T))


def mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product mod 2."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return _backend.kernels.matmul(a, b)


def mul_chain(*ms: BitMatrix) -> BitMatrix:
    out = ms[0]
    for m in ms[1:]:
        out = mul(out, m)
    return out


def inverse(a: BitMatrix) -> BitMatrix:
    """Inverse over F2; raises :class:`Singular` if there is none."""
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"inverse needs a square matrix, got {a.shape}")
    inv = _backend.kernels.inverse(a)
    if inv is None:
        raise Singular("matrix is not invertible over F2")
    return inv


def rref(a: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (lowest-index pivot rows)."""
    return _backend.kernels.rref(a)


def rank(a: BitMatrix) -> int:
    return len(_backend.kernels.rref(a)[1])


def is_invertible(a: BitMatrix) -> bool:
    return a.shape[0] == a.shape[1] and rank(a) == a.shape[0]


def nullspace(a: BitMatrix) -> BitMatrix:
    """Basis of {x : a x = 0} as the rows of the returned array."""
    r, pivots = rref(a)
    cols = a.shape[1]
    free = [j for j in range(cols) if j not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for i, p in enumerate(pivots):
            basis[k, p] = r[i, j]
    return basis


def random_invertible(n: int, seed=None) -> BitMatrix:
    """Uniform sample from GL(n, F2) by rejection.

    ``seed`` may be an int, ``None`` or a ``numpy.random.Generator``; the
    same int always yields the same matrix.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    while True:
        m = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        if rank(m) == n:
            return m


# Polynomials over F2 are Python ints: bit i is the coefficient of t**i.


def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = _pdeg(b)
    while a and _pdeg(a) >= db:
        shift = _pdeg(a) - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return a


def _pdiv(a: int, b: int) -> int:
    q, r = _pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def _poly_at_vector(p: int, a: BitMatrix, v: np.ndarray) -> np.ndarray:
    """p(a) @ v by Horner's rule; v is a 1-D 0/1 vector."""
    y = np.zeros_like(v)
    for k in range(_pdeg(p), -1, -1):
        y = _backend.kernels.matvec(a, y)
        if (p >> k) & 1:
            y ^= v
    return y


def _poly_at_matrix(p: int, a: BitMatrix) -> BitMatrix:
    m = a.shape[0]
    out = np.zeros((m, m), dtype=np.uint8)
    eye = identity(m)
    for k in range(_pdeg(p), -1, -1):
        out = _backend.kernels.matmul(out, a)
        if (p >> k) & 1:
            out ^= eye
    return out


def _krylov(a: BitMatrix, v: np.ndarray, count: int) -> BitMatrix:
    m = a.shape[0]
    k = np.zeros((m, count), dtype=np.uint8)
    x = v.copy()
    for i in range(count):
        k[:, i] = x
        if i + 1 < count:
            x = _backend.kernels.matvec(a, x)
    return k


def _vector_minpoly(a: BitMatrix, v: np.ndarray) -> int:
    """Minimal polynomial of ``v`` under ``a``."""
    m = a.shape[0]
    r, pivots = rref(_krylov(a, v, m + 1))
    d = 0
    while d < len(pivots) and pivots[d] == d:
        d += 1
    poly = 1 << d
    for i in range(d):
        if r[i, d]:
            poly |= 1 << i
    return poly


def _combine(a, v, f, u, g):
    """Vector whose minimal polynomial is lcm(f, g), from vectors with minimal polynomials f, g."""
    gcd = _pgcd(f, g)
    lcm = _pmul(_pdiv(f, gcd), g)
    excess = _pdiv(g, gcd)
    rest = g
    while True:
        e = _pgcd(rest, excess)
        if _pdeg(e) == 0:
            break
        rest = _pdiv(rest, e)
    # g1 keeps exactly the primes where g has higher multiplicity than f
    g1 = _pdiv(g, rest)
    f1 = _pdiv(lcm, g1)
    w = _poly_at_vector(_pdiv(f, f1), a, v) ^ _poly_at_vector(_pdiv(g, g1), a, u)
    return w, lcm


def _max_order_vector(a: BitMatrix) -> tuple[np.ndarray, int]:
    m = a.shape[0]
    v = np.zeros(m, dtype=np.uint8)
    v[0] = 1
    f = _vector_minpoly(a, v)
    while _pdeg(f) < m:
        residue = _poly_at_matrix(f, a)
        nz = np.flatnonzero(residue.any(axis=0))
        if nz.size == 0:
            break
        u = np.zeros(m, dtype=np.uint8)
        u[nz[0]] = 1
        v, f = _combine(a, v, f, u, _vector_minpoly(a, u))
        assert _vector_minpoly(a, v) == f
    return v, f


def companion(poly: int) -> BitMatrix:
    """Companion matrix: ones on the subdiagonal, last column = low coefficients."""
    d = _pdeg(poly)
    comp = np.zeros((d, d), dtype=np.uint8)
    for i in range(d - 1):
        comp[i + 1, i] = 1
    for i in range(d):
        comp[i, d - 1] = (poly >> i) & 1
    return comp


def cyclic_decomposition(c: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Return ``(q, polys)`` with ``inv(q) @ c @ q`` block diagonal companions.

    Blocks are split off largest-first via a maximal-order vector and an
    invariant complement cut out by a dual Krylov sequence.
    """
    n = c.shape[0]
    basis = identity(n)  # columns span the remaining invariant subspace
    a = c.copy()
    columns, polys = [], []
    while a.shape[0] > 0:
        m = a.shape[0]
        v, f = _max_order_vector(a)
        d = _pdeg(f)
        k = _krylov(a, v, d)
        columns.append(mul(basis, k))
        polys.append(f)
        if d == m:
            break
        _, piv = rref(k.T)
        extra = [j for j in range(m) if j not in set(piv)]
        full = np.concatenate([k, identity(m)[:, extra]], axis=1)
        w = inverse(full)[d - 1]
        dual = np.zeros((d, m), dtype=np.uint8)
        row = w.reshape(1, -1)
        for i in range(d):
            dual[i] = row
            row = mul(row, a)
        comp = nullspace(dual).T
        p = np.concatenate([k, comp], axis=1)
        block = mul_chain(inverse(p), a, p)
        assert not block[:d, d:].any() and not block[d:, :d].any()
        a = np.ascontiguousarray(block[d:, d:])
        basis = mul(basis, comp)
    return np.concatenate(columns, axis=1), polys


def _hankel_symmetrizer(poly: int) -> BitMatrix:
    """Symmetric invertible H with H @ companion(poly) symmetric."""
    d = _pdeg(poly)
    h = [0] * (2 * d - 1)
    h[d - 1] = 1
    for k in range(d - 1):
        acc = 0
        for i in range(d):
            acc ^= ((poly >> i) & 1) & h[k + i]
        h[k + d] = acc
    idx = np.add.outer(np.arange(d), np.arange(d))
    return np.array(h, dtype=np.uint8)[idx]


@dataclass(frozen=True)
class SymmetricPair:
    s1: BitMatrix
    s2: BitMatrix


def symmetric_pair_factor(c: BitMatrix) -> SymmetricPair:
    """Factor invertible ``c`` as ``s1 @ s2`` with both factors symmetric.

    Works block-wise on the rational canonical form: each companion block B
    is ``inv(H) @ (H @ B)`` with H a symmetric Hankel matrix, and the
    blocks are carried back by congruence.
    """
    c = as_bits(c, "c")
    n = c.shape[0]
    if c.shape != (n, n):
        raise ValueError(f"c must be square, got {c.shape}")
    if not is_invertible(c):
        raise Singular("c is not invertible over F2")
    q, polys = cyclic_decomposition(c)
    h1 = np.zeros((n, n), dtype=np.uint8)
    h2 = np.zeros((n, n), dtype=np.uint8)
    off = 0
    for poly in polys:
        d = _pdeg(poly)
        h = _hankel_symmetrizer(poly)
        sl = slice(off, off + d)
        h1[sl, sl] = inverse(h)
        h2[sl, sl] = mul(h, companion(poly))
        off += d
    q_inv = inverse(q)
    s1 = mul_chain(q, h1, q.T)
    s2 = mul_chain(q_inv.T, h2, q_inv)
    return SymmetricPair(s1, s2)
