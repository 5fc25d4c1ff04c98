"""Clifford operations as sign-exact symplectic tableaux.

Conventions used everywhere in the package:

* A Pauli on n qubits is a column vector ``(x; z)`` of length 2n, and
  ``P(x, z) = i**(x.z) X**x Z**z`` is its Hermitian representative.
* ``CliffordOp.s[:, j]`` is the image of generator j (``X_j`` for j < n,
  ``Z_{j-n}`` otherwise) and ``r[j]`` its sign bit:
  ``U g_j U^dag = (-1)**r[j] P(s[:, j])``. The symplectic form is
  ``[[0, I], [I, 0]]``.
* ``compose(a, b)`` applies ``b`` first, then ``a`` (matrix product a @ b).

With these conventions the global gate on coupling matrix ``xi`` has the
block forms ``[[I, 0], [xi, I]]`` (Z axis) and ``[[I, xi], [0, I]]`` (X axis),
and a CNOT network with matrix ``C`` has ``[[C^-T, 0], [0, C]]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gf2
from .gf2 import BitMatrix, Singular


class Axis(str, enum.Enum):
    X = "X"
    Z = "Z"


class LayerKind(str, enum.Enum):
    PAULI = "Pauli"
    SZ = "SZ"
    SX = "SX"
    HALL = "Hall"
    HSUBSET = "Hsubset"
    RXX = "RXX"
    RZZ = "RZZ"
    CXLAYER = "CXlayer"
    MQ = "MQ"


def _bits_vector(v, n: int, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=np.uint8).ravel()
    if arr.shape != (n,) or not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must be a 0/1 vector of length {n}")
    return arr


@dataclass(frozen=True, eq=False)
class MqGate:
    """One global entangling gate.

    Diagonal entries of ``xi`` are single-qubit quarter-turns about ``axis``;
    an off-diagonal pair couples two qubits with a controlled-phase type
    interaction in that basis.
    """

    axis: Axis
    xi: BitMatrix

    def __post_init__(self):
        xi = gf2.as_bits(self.xi, "xi")
        if not gf2.is_symmetric(xi):
            raise ValueError("xi must be a symmetric square matrix")
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "xi", xi)

    @property
    def n(self) -> int:
        return self.xi.shape[0]

    @property
    def is_entangling(self) -> bool:
        return bool(np.triu(self.xi, 1).any())

    def __eq__(self, other):
        if not isinstance(other, MqGate):
            return NotImplemented
        return self.axis == other.axis and np.array_equal(self.xi, other.xi)

    def __repr__(self):
        return f"MqGate(axis={self.axis.value}, xi={self.xi.tolist()})"


@dataclass(frozen=True, eq=False)
class PauliFrame:
    """The Pauli layer ``X**eta Z**mu``."""

    eta: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        eta = np.asarray(self.eta, dtype=np.uint8).ravel()
        object.__setattr__(self, "eta", _bits_vector(eta, eta.size, "eta"))
        object.__setattr__(self, "mu", _bits_vector(self.mu, eta.size, "mu"))

    @classmethod
    def zero(cls, n: int) -> PauliFrame:
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))

    @property
    def n(self) -> int:
        return self.eta.size

    def is_identity(self) -> bool:
        return not (self.eta.any() or self.mu.any())

    def __eq__(self, other):
        if not isinstance(other, PauliFrame):
            return NotImplemented
        return np.array_equal(self.eta, other.eta) and np.array_equal(self.mu, other.mu)

    def __repr__(self):
        return f"PauliFrame(eta={self.eta.tolist()}, mu={self.mu.tolist()})"


@dataclass(frozen=True, eq=False)
class CliffordOp:
    s: BitMatrix
    r: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.s, dtype=np.uint8)
        if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2 or s.shape[0] == 0:
            raise ValueError(f"symplectic part must be 2n x 2n, got {s.shape}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "r", _bits_vector(self.r, s.shape[0], "r"))

    @property
    def n(self) -> int:
        return self.s.shape[0] // 2

    @classmethod
    def identity(cls, n: int) -> CliffordOp:
        return cls(gf2.identity(2 * n), np.zeros(2 * n, np.uint8))

    def __eq__(self, other):
        if not isinstance(other, CliffordOp):
            return NotImplemented
        return np.array_equal(self.s, other.s) and np.array_equal(self.r, other.r)

    def __repr__(self):
        return f"CliffordOp(n={self.n}, s={self.s.tolist()}, r={self.r.tolist()})"


@dataclass(frozen=True, eq=False)
class LayerSpec:
    """One layer of a compiled circuit.

    ``payload`` depends on ``kind``: a qubit tuple for SZ/SX/Hsubset, a
    :class:`PauliFrame` for Pauli, a symmetric zero-diagonal matrix for
    RZZ/RXX, an invertible matrix for CXlayer, an :class:`MqGate` for MQ and
    ``None`` for Hall.
    """

    kind: LayerKind
    n: int
    payload: object = field(default=None)

    def __post_init__(self):
        kind = LayerKind(self.kind)
        object.__setattr__(self, "kind", kind)
        n, p = self.n, self.payload
        if kind in (LayerKind.SZ, LayerKind.SX, LayerKind.HSUBSET):
            qubits = tuple(sorted(int(q) for q in p))
            if len(set(qubits)) != len(qubits) or any(q < 0 or q >= n for q in qubits):
                raise ValueError(f"{kind.value}: bad qubit subset {p!r} for n={n}")
            object.__setattr__(self, "payload", qubits)
        elif kind is LayerKind.PAULI:
            if not isinstance(p, PauliFrame) or p.n != n:
                raise ValueError("Pauli layer needs a PauliFrame of matching size")
        elif kind in (LayerKind.RZZ, LayerKind.RXX):
            m = gf2.as_bits(p, kind.value)
            if m.shape != (n, n) or not gf2.is_symmetric(m) or np.diagonal(m).any():
                raise ValueError(f"{kind.value} needs a symmetric zero-diagonal {n}x{n} matrix")
            object.__setattr__(self, "payload", m)
        elif kind is LayerKind.CXLAYER:
            m = gf2.as_bits(p, "CX matrix")
            if m.shape != (n, n):
                raise ValueError(f"CX layer needs an {n}x{n} matrix")
            object.__setattr__(self, "payload", m)
        elif kind is LayerKind.MQ:
            if not isinstance(p, MqGate) or p.n != n:
                raise ValueError("MQ layer needs an MqGate of matching size")
        elif p is not None:
            raise ValueError("Hall layer takes no payload")

    def __eq__(self, other):
        if not isinstance(other, LayerSpec):
            return NotImplemented
        if self.kind != other.kind or self.n != other.n:
            return False
        if isinstance(self.payload, np.ndarray):
            return np.array_equal(self.payload, other.payload)
        return self.payload == other.payload

    def __repr__(self):
        p = self.payload.tolist() if isinstance(self.payload, np.ndarray) else self.payload
        return f"LayerSpec({self.kind.value}, n={self.n}, payload={p!r})"


# --- symplectic algebra -----------------------------------------------------


def symplectic_form(n: int) -> BitMatrix:
    lam = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    lam[:n, n:] = gf2.identity(n)
    lam[n:, :n] = gf2.identity(n)
    return lam


def is_symplectic(a: CliffordOp) -> bool:
    """True iff ``s @ Lambda @ s.T == Lambda`` over F2."""
    lam = symplectic_form(a.n)
    return bool(np.array_equal(gf2.mul_chain(a.s, lam, a.s.T), lam))


def _phase_exponents(s: BitMatrix, r: np.ndarray) -> np.ndarray:
    """Exponent p (mod 4) with column image ``i**p X**x Z**z``."""
    n = s.shape[0] // 2
    xz = (s[:n].astype(np.int64) * s[n:]).sum(axis=0)
    return (xz + 2 * r.astype(np.int64)) % 4


def _images_to_signs(s: BitMatrix, p: np.ndarray) -> np.ndarray:
    n = s.shape[0] // 2
    xz = (s[:n].astype(np.int64) * s[n:]).sum(axis=0)
    twice = (p - xz) % 4
    if (twice % 2).any():
        raise ArithmeticError("non-Hermitian Pauli image; input is not a Clifford tableau")
    return (twice // 2).astype(np.uint8)


def compose(a: CliffordOp, b: CliffordOp) -> CliffordOp:
    """Tableau of "apply ``b``, then ``a``", signs propagated exactly."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n} qubits")
    n = a.n
    pa = _phase_exponents(a.s, a.r)
    pb = _phase_exponents(b.s, b.r)
    v = b.s.astype(np.int64)
    # reordering a product of generator images into X..Z normal form costs
    # (-1)**(z_k . x_l) for every ordered pair k < l
    w = a.s[n:].T.astype(np.int64) @ a.s[:n].astype(np.int64)
    upper = np.triu(w % 2, 1)
    quad = ((upper @ v) * v).sum(axis=0) % 2
    p = (pb + pa @ v + 2 * quad) % 4
    s = gf2.mul(a.s, b.s)
    return CliffordOp(s, _images_to_signs(s, p))


def compose_all(ops, n: int) -> CliffordOp:
    """Fold ``ops`` listed in time order."""
    out = CliffordOp.identity(n)
    for op in ops:
        out = compose(op, out)
    return out


# --- constructors -----------------------------------------------------------


def _check_symmetric(xi) -> BitMatrix:
    xi = gf2.as_bits(xi, "xi")
    if not gf2.is_symmetric(xi):
        raise ValueError("xi must be a symmetric square matrix")
    return xi


def mqz_symplectic(xi) -> CliffordOp:
    xi = _check_symmetric(xi)
    n = xi.shape[0]
    s = gf2.identity(2 * n)
    s[n:, :n] = xi
    return CliffordOp(s, np.zeros(2 * n, np.uint8))


def mqx_symplectic(xi) -> CliffordOp:
    xi = _check_symmetric(xi)
    n = xi.shape[0]
    s = gf2.identity(2 * n)
    s[:n, n:] = xi
    r = np.zeros(2 * n, np.uint8)
    # H Y H = -Y: the diagonal quarter-turns flip the sign of the Z images
    r[n:] = np.diagonal(xi)
    return CliffordOp(s, r)


def mq_symplectic(gate: MqGate) -> CliffordOp:
    return mqz_symplectic(gate.xi) if gate.axis is Axis.Z else mqx_symplectic(gate.xi)


def cx_layer_symplectic(c) -> CliffordOp:
    c = gf2.as_bits(c, "c")
    n = c.shape[0]
    if c.shape != (n, n):
        raise ValueError("CX matrix must be square")
    s = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    s[:n, :n] = gf2.inverse(c).T
    s[n:, n:] = c
    return CliffordOp(s, np.zeros(2 * n, np.uint8))


def hadamard_symplectic(n: int, qubits=None) -> CliffordOp:
    qubits = range(n) if qubits is None else qubits
    s = gf2.identity(2 * n)
    for q in qubits:
        s[[q, n + q]] = s[[n + q, q]]
    return CliffordOp(s, np.zeros(2 * n, np.uint8))


def pauli_symplectic(frame: PauliFrame) -> CliffordOp:
    n = frame.n
    # X_j anticommutes with Z**mu_j, Z_j with X**eta_j
    return CliffordOp(gf2.identity(2 * n), np.concatenate([frame.mu, frame.eta]))


def _diag(n: int, qubits) -> BitMatrix:
    d = np.zeros((n, n), dtype=np.uint8)
    for q in qubits:
        d[q, q] = 1
    return d


def layer_symplectic(layer: LayerSpec) -> CliffordOp:
    kind, n, p = layer.kind, layer.n, layer.payload
    if kind is LayerKind.PAULI:
        return pauli_symplectic(p)
    if kind is LayerKind.SZ:
        return mqz_symplectic(_diag(n, p))
    if kind is LayerKind.SX:
        return mqx_symplectic(_diag(n, p))
    if kind is LayerKind.HALL:
        return hadamard_symplectic(n)
    if kind is LayerKind.HSUBSET:
        return hadamard_symplectic(n, p)
    if kind is LayerKind.RZZ:
        return mqz_symplectic(p)
    if kind is LayerKind.RXX:
        return mqx_symplectic(p)
    if kind is LayerKind.CXLAYER:
        return cx_layer_symplectic(p)
    if kind is LayerKind.MQ:
        return mq_symplectic(p)
    raise ValueError(f"unknown layer kind {kind!r}")


def layers_symplectic(layers, n: int) -> CliffordOp:
    return compose_all((layer_symplectic(layer) for layer in layers), n)


# --- elementary gates -------------------------------------------------------

# Small tableaux of the elementary gates, qubit order as listed in the gate.
# Matrices are (x_0..x_{k-1}, z_0..z_{k-1}) column conventions as above.
_ELEMENTARY = {
    "I": ([[1, 0], [0, 1]], [0, 0]),
    "H": ([[0, 1], [1, 0]], [0, 0]),
    "S": ([[1, 0], [1, 1]], [0, 0]),
    "SDG": ([[1, 0], [1, 1]], [1, 0]),
    "SX": ([[1, 1], [0, 1]], [0, 1]),
    "X": ([[1, 0], [0, 1]], [0, 1]),
    "Y": ([[1, 0], [0, 1]], [1, 1]),
    "Z": ([[1, 0], [0, 1]], [1, 0]),
    # control 0, target 1
    "CX": (
        [[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]],
        [0, 0, 0, 0],
    ),
    "CZ": (
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [1, 0, 0, 1]],
        [0, 0, 0, 0],
    ),
}

GATE_ARITY = {name: len(r) // 2 for name, (_, r) in _ELEMENTARY.items()}


def elementary_tableau(name: str) -> CliffordOp:
    try:
        s, r = _ELEMENTARY[name]
    except KeyError:
        raise ValueError(f"unknown elementary gate {name!r}") from None
    return CliffordOp(np.array(s, dtype=np.uint8), np.array(r, dtype=np.uint8))


@lru_cache(maxsize=None)
def local_table(name: str) -> tuple[np.ndarray, np.ndarray]:
    """Lookup table for a k-qubit gate acting on local Pauli patterns.

    The pattern index packs ``(x_0, z_0, x_1, z_1, ...)`` little-endian. Returns
    ``(new_pattern, sign_flip)`` arrays of length ``4**k``.
    """
    g = elementary_tableau(name)
    k = g.n
    size = 4**k
    new = np.zeros(size, dtype=np.int64)
    flip = np.zeros(size, dtype=np.uint8)
    for idx in range(size):
        v = np.zeros(2 * k, dtype=np.uint8)
        for q in range(k):
            v[q] = (idx >> (2 * q)) & 1
            v[k + q] = (idx >> (2 * q + 1)) & 1
        # embed v as the image of the first generator of a dummy tableau
        probe = np.zeros((2 * k, 2 * k), dtype=np.uint8)
        probe[:, 0] = v
        pb = int((v[:k].astype(int) @ v[k:]) % 4)
        pa = _phase_exponents(g.s, g.r)
        w = g.s[k:].T.astype(np.int64) @ g.s[:k].astype(np.int64)
        quad = int(v @ np.triu(w % 2, 1) @ v) % 2
        p = (pb + int(pa @ v) + 2 * quad) % 4
        out = gf2.mul(g.s, v.reshape(-1, 1)).ravel()
        xz = int(out[:k].astype(int) @ out[k:])
        flip[idx] = ((p - xz) % 4) // 2
        new[idx] = sum(
            (int(out[q]) << (2 * q)) | (int(out[k + q]) << (2 * q + 1)) for q in range(k)
        )
    return new, flip


class Tableau:
    """Mutable tableau for fast gate-by-gate simulation.

    Rows ``x[q]``/``z[q]`` hold the q-th qubit components of all 2n generator
    images; each elementary gate rewrites only the rows it touches.
    """

    def __init__(self, n: int):
        self.n = n
        self.x = np.zeros((n, 2 * n), dtype=np.uint8)
        self.z = np.zeros((n, 2 * n), dtype=np.uint8)
        self.x[:, :n] = gf2.identity(n)
        self.z[:, n:] = gf2.identity(n)
        self.r = np.zeros(2 * n, dtype=np.uint8)

    def apply(self, name: str, *qubits: int) -> None:
        new, flip = local_table(name)
        if len(qubits) != GATE_ARITY[name]:
            raise ValueError(f"{name} acts on {GATE_ARITY[name]} qubit(s), got {qubits}")
        if len(set(qubits)) != len(qubits) or any(q < 0 or q >= self.n for q in qubits):
            raise ValueError(f"bad qubits {qubits} for n={self.n}")
        idx = np.zeros(2 * self.n, dtype=np.int64)
        for k, q in enumerate(qubits):
            idx |= self.x[q].astype(np.int64) << (2 * k)
            idx |= self.z[q].astype(np.int64) << (2 * k + 1)
        out = new[idx]
        self.r ^= flip[idx]
        for k, q in enumerate(qubits):
            self.x[q] = (out >> (2 * k)) & 1
            self.z[q] = (out >> (2 * k + 1)) & 1

    def to_op(self) -> CliffordOp:
        return CliffordOp(np.concatenate([self.x, self.z]), self.r.copy())


__all__ = [
    "Axis",
    "CliffordOp",
    "LayerKind",
    "LayerSpec",
    "MqGate",
    "PauliFrame",
    "Singular",
    "Tableau",
    "compose",
    "compose_all",
    "cx_layer_symplectic",
    "elementary_tableau",
    "hadamard_symplectic",
    "is_symplectic",
    "layer_symplectic",
    "layers_symplectic",
    "local_table",
    "mq_symplectic",
    "mqx_symplectic",
    "mqz_symplectic",
    "pauli_symplectic",
    "symplectic_form",
]
