"""Compile Clifford operations to at most four global entangling gates.

Pipeline (time order, left to right):

1. ``canonical_form``: P - CX - RZZ - SZ - Hall - RZZ - SZ - H
2. ``commute_hall_left``: P - Hall - CX' - RXX - SX - RZZ - SZ - H
3. the X-type block is pushed through CX' (``conjugate_mqx_through_cx``),
   giving P - SZ - Hall - RXX - CX - RZZ - SZ - H
4. the CX layer becomes MQX - MQZ - MQX - MQZ (``cx_four_gate``) and its edge
   gates absorb the neighbouring RXX/RZZ layers.

Signs are not tracked through the rewrites; a single Pauli layer in front
is solved for at the end (``pauli_correction``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import gf2
from .clifford import (
    Axis,
    CliffordOp,
    LayerKind,
    LayerSpec,
    MqGate,
    PauliFrame,
    compose,
    compose_all,
    cx_layer_symplectic,
    layers_symplectic,
    mqx_symplectic,
    mqz_symplectic,
)
from .gf2 import BitMatrix


class SymplecticMismatch(ValueError):
    """Gates do not reproduce the target's symplectic part."""


class Variant(str, enum.Enum):
    XZ = "XZ"
    ZX = "ZX"


@dataclass(frozen=True, eq=False)
class CompiledCircuit:
    n: int
    layers: tuple
    pauli: PauliFrame
    variant: Variant = Variant.XZ

    @property
    def mq_count(self) -> int:
        return sum(1 for layer in self.layers if layer.kind is LayerKind.MQ)

    @property
    def mq_gates(self) -> list[MqGate]:
        return [layer.payload for layer in self.layers if layer.kind is LayerKind.MQ]

    def __eq__(self, other):
        if not isinstance(other, CompiledCircuit):
            return NotImplemented
        return (
            self.n == other.n
            and self.variant == other.variant
            and self.pauli == other.pauli
            and len(self.layers) == len(other.layers)
            and all(a == b for a, b in zip(self.layers, other.layers))
        )


@dataclass(frozen=True, eq=False)
class FourGateDecomp:
    """CX layer as MQX(e2), MQZ(f), MQX(e1), MQZ(g) in time order, after ``frame``."""

    g: BitMatrix
    e1: BitMatrix
    f: BitMatrix
    e2: BitMatrix
    frame: PauliFrame

    def gates(self) -> list[MqGate]:
        return [
            MqGate(Axis.X, self.e2),
            MqGate(Axis.Z, self.f),
            MqGate(Axis.X, self.e1),
            MqGate(Axis.Z, self.g),
        ]


def _offdiag(m: BitMatrix) -> BitMatrix:
    out = m.copy()
    np.fill_diagonal(out, 0)
    return out


def _diag_qubits(m: BitMatrix) -> tuple[int, ...]:
    return tuple(int(q) for q in np.flatnonzero(np.diagonal(m)))


def _symmetric_or_raise(m: BitMatrix, what: str) -> BitMatrix:
    if not gf2.is_symmetric(m):
        raise ArithmeticError(f"{what} is not symmetric; input tableau is not symplectic")
    return m


# --- canonical form ---------------------------------------------------------


def _canonical_blocks(u: CliffordOp):
    """Solve ``S = H_h Z(g2) H_all Z(g1) CX(c)`` for (c, g1, g2, h)."""
    n = u.n
    s = u.s
    # pick the lowest-index independent rows of the Z-image x block; the
    # remaining qubits take their row from the z block instead
    _, keep = gf2.rref(np.ascontiguousarray(s[:n, n:].T))
    hsub = tuple(q for q in range(n) if q not in set(keep))
    t = s.copy()
    for q in hsub:
        t[[q, n + q]] = t[[n + q, q]]
    c = np.ascontiguousarray(t[:n, n:])
    c_inv = gf2.inverse(c)
    g1 = _symmetric_or_raise(gf2.mul(t[:n, :n], c.T), "first phase block")
    g2 = _symmetric_or_raise(gf2.mul(t[n:, n:], c_inv), "second phase block")
    return c, g1, g2, hsub


def canonical_form(u: CliffordOp) -> list[LayerSpec]:
    """Layers P, CX, RZZ, SZ, Hall, RZZ, SZ, H (time order) composing to ``u``."""
    n = u.n
    c, g1, g2, hsub = _canonical_blocks(u)
    body = [
        LayerSpec(LayerKind.CXLAYER, n, c),
        LayerSpec(LayerKind.RZZ, n, _offdiag(g1)),
        LayerSpec(LayerKind.SZ, n, _diag_qubits(g1)),
        LayerSpec(LayerKind.HALL, n),
        LayerSpec(LayerKind.RZZ, n, _offdiag(g2)),
        LayerSpec(LayerKind.SZ, n, _diag_qubits(g2)),
        LayerSpec(LayerKind.HSUBSET, n, hsub),
    ]
    frame = pauli_correction(u, [layers_symplectic(body, n)])
    return [LayerSpec(LayerKind.PAULI, n, frame)] + body


_CANONICAL_KINDS = (
    LayerKind.PAULI,
    LayerKind.CXLAYER,
    LayerKind.RZZ,
    LayerKind.SZ,
    LayerKind.HALL,
    LayerKind.RZZ,
    LayerKind.SZ,
    LayerKind.HSUBSET,
)


def commute_hall_left(layers: list[LayerSpec]) -> list[LayerSpec]:
    """Move the all-qubit Hadamard layer in front of CX, RZZ and SZ.

    Conjugation by Hadamards turns SZ into SX, RZZ into RXX and swaps
    control and target roles, i.e. the CX matrix ``c`` becomes ``c^-T``.
    """
    kinds = tuple(layer.kind for layer in layers)
    if kinds != _CANONICAL_KINDS:
        raise ValueError(f"expected layers {[k.value for k in _CANONICAL_KINDS]}, got {[k.value for k in kinds]}")
    p, cx, rzz, sz, hall, rzz2, sz2, hsub = layers
    n = p.n
    return [
        p,
        hall,
        LayerSpec(LayerKind.CXLAYER, n, gf2.inverse(cx.payload).T.copy()),
        LayerSpec(LayerKind.RXX, n, rzz.payload),
        LayerSpec(LayerKind.SX, n, sz.payload),
        rzz2,
        sz2,
        hsub,
    ]


def conjugate_mqx_through_cx(m: BitMatrix, c: BitMatrix) -> BitMatrix:
    """Coupling ``c^T m c`` with X(m) CX(c) = CX(c) X(c^T m c) as symplectic matrices."""
    m = gf2.as_bits(m, "m")
    c = gf2.as_bits(c, "c")
    if not gf2.is_symmetric(m):
        raise ValueError("m must be symmetric")
    if not gf2.is_invertible(c):
        raise gf2.Singular("c is not invertible over F2")
    return gf2.mul_chain(c.T, m, c)


# --- CX layer with four global gates ----------------------------------------


def cx_four_gate(c: BitMatrix) -> FourGateDecomp:
    """Four-gate realization of the CX layer with matrix ``c``.

    With ``c = inv(e1) @ e2`` (e1, e2 symmetric), ``f = inv(e1) + inv(e2)`` and
    ``g = f @ c.T`` the product ``Z(g) X(e1) Z(f) X(e2)`` equals the CX layer's
    symplectic matrix; ``frame`` fixes the remaining signs.
    """
    c = gf2.as_bits(c, "c")
    pair = gf2.symmetric_pair_factor(c)
    e1 = gf2.inverse(pair.s1)
    e2 = pair.s2
    f = pair.s1 ^ gf2.inverse(e2)
    g = gf2.mul(f, c.T)
    ops = [mqx_symplectic(e2), mqz_symplectic(f), mqx_symplectic(e1), mqz_symplectic(g)]
    frame = pauli_correction(cx_layer_symplectic(c), ops)
    return FourGateDecomp(g, e1, f, e2, frame)


def pauli_correction(target: CliffordOp, gates) -> PauliFrame:
    """Pauli layer, applied before ``gates`` (time order), that fixes all signs."""
    n = target.n
    got = compose_all(gates, n)
    if not np.array_equal(got.s, target.s):
        raise SymplecticMismatch("gates do not match the target's symplectic part")
    diff = got.r ^ target.r
    # the frame flips X_j images when it holds Z_j and vice versa
    return PauliFrame(eta=diff[n:], mu=diff[:n])


def merge_mq(a: MqGate, b: MqGate) -> tuple[MqGate, PauliFrame]:
    """Fuse two same-axis global gates; the frame is the leftover Pauli.

    Diagonal quarter-turns present in both gates add up to a half turn, i.e.
    a Pauli about the gate axis. The gates and the frame all commute.
    """
    if a.axis != b.axis:
        raise ValueError(f"axis mismatch: {a.axis.value} vs {b.axis.value}")
    if a.n != b.n:
        raise ValueError("qubit count mismatch")
    both = np.diagonal(a.xi) & np.diagonal(b.xi)
    zero = np.zeros(a.n, np.uint8)
    frame = PauliFrame(eta=both, mu=zero) if a.axis is Axis.X else PauliFrame(eta=zero, mu=both)
    return MqGate(a.axis, a.xi ^ b.xi), frame


# --- full compilation -------------------------------------------------------


def _four_gate_matrices(c: BitMatrix):
    """(e2, f, e1, g) for an XZ block, or None when c is the identity."""
    if np.array_equal(c, gf2.identity(c.shape[0])):
        return None
    dec = cx_four_gate(c)
    return dec.e2, dec.f, dec.e1, dec.g


def _xz_body(n, c, g1, g2, hsub):
    # Hall is moved in front: CX(c) -> CX(c^-T); then the X-type block
    # X(g1) is pushed before the CX layer and its diagonal through Hall
    c2 = gf2.inverse(c).T.copy()
    m = conjugate_mqx_through_cx(g1, c2)
    blocks = _four_gate_matrices(c2)
    if blocks is None:
        mq = [(Axis.X, _offdiag(m)), (Axis.Z, _offdiag(g2))]
    else:
        e2, f, e1, g = blocks
        mq = [(Axis.X, e2 ^ _offdiag(m)), (Axis.Z, f), (Axis.X, e1), (Axis.Z, g ^ _offdiag(g2))]
    head = [LayerSpec(LayerKind.SZ, n, _diag_qubits(m)), LayerSpec(LayerKind.HALL, n)]
    tail = [LayerSpec(LayerKind.SZ, n, _diag_qubits(g2)), LayerSpec(LayerKind.HSUBSET, n, hsub)]
    return head, mq, tail


def _zx_body(n, c, g1, g2, hsub):
    # Hall is moved after the second phase block instead: Z(g2) Hall = Hall X(g2),
    # and Z(g1) is pushed after the CX layer
    c_inv = gf2.inverse(c)
    m = gf2.mul_chain(c_inv, g1, c_inv.T)
    blocks = _four_gate_matrices(c_inv.T.copy())
    if blocks is None:
        mq = [(Axis.Z, _offdiag(m)), (Axis.X, _offdiag(g2))]
    else:
        # Hadamard conjugate of the XZ block for c^-T
        e2, f, e1, g = blocks
        mq = [(Axis.Z, e2 ^ _offdiag(m)), (Axis.X, f), (Axis.Z, e1), (Axis.X, g ^ _offdiag(g2))]
    head = [LayerSpec(LayerKind.SZ, n, _diag_qubits(m))]
    tail = [
        LayerSpec(LayerKind.HALL, n),
        LayerSpec(LayerKind.SZ, n, _diag_qubits(g2)),
        LayerSpec(LayerKind.HSUBSET, n, hsub),
    ]
    return head, mq, tail


def compile_clifford(u: CliffordOp, variant: Variant | str = Variant.XZ) -> CompiledCircuit:
    """Single-qubit layers plus at most four global gates realizing ``u`` exactly.

    Global gates whose coupling matrix vanishes are dropped.
    """
    variant = Variant(variant)
    n = u.n
    c, g1, g2, hsub = _canonical_blocks(u)
    build = _xz_body if variant is Variant.XZ else _zx_body
    head, mq, tail = build(n, c, g1, g2, hsub)
    body = head + [LayerSpec(LayerKind.MQ, n, MqGate(ax, xi)) for ax, xi in mq if xi.any()] + tail
    body = [layer for layer in body if not _is_trivial(layer)]
    frame = pauli_correction(u, [layers_symplectic(body, n)])
    layers = [LayerSpec(LayerKind.PAULI, n, frame)] + body
    return CompiledCircuit(n, tuple(layers), frame, variant)


def _is_trivial(layer: LayerSpec) -> bool:
    if layer.kind in (LayerKind.SZ, LayerKind.SX, LayerKind.HSUBSET):
        return not layer.payload
    return False


def recompose(circ: CompiledCircuit) -> CliffordOp:
    """Tableau of a compiled circuit from the layer constructors."""
    return layers_symplectic(circ.layers, circ.n)


# --- Gaussian elimination baseline ------------------------------------------


def gaussian_steps(c: BitMatrix) -> list[tuple[int, list[int]]]:
    """Elimination steps ``(control, targets)`` in time order.

    Column operations ``c @ (I + E_ab)`` (CNOT control a, target b) reduce c to
    the identity: forward elimination, then back substitution, lowest-index
    pivots. Each step's CNOTs share their control.
    """
    m = np.array(gf2.as_bits(c, "c"), dtype=np.uint8)
    n = m.shape[0]
    if m.shape != (n, n) or not gf2.is_invertible(m):
        raise gf2.Singular("c is not invertible over F2")
    steps = []

    def step(control, targets):
        if targets:
            m[:, targets] ^= m[:, [control]]
            steps.append((control, list(targets)))

    for i in range(n):
        if not m[i, i]:
            step(int(np.flatnonzero(m[i, i + 1 :])[0]) + i + 1, [i])
        step(i, [int(b) for b in np.flatnonzero(m[i, i + 1 :]) + i + 1])
    for i in range(n - 1, -1, -1):
        step(i, [int(b) for b in np.flatnonzero(m[i, :i])])
    return steps


def star_matrix(n: int, center: int, leaves) -> BitMatrix:
    xi = np.zeros((n, n), dtype=np.uint8)
    xi[center, list(leaves)] = 1
    xi[list(leaves), center] = 1
    return xi


def gaussian_cnot_synthesis(c: BitMatrix) -> tuple[list[tuple[int, int]], list[MqGate]]:
    """CNOTs (control, target) realizing the CX layer ``c``, and the fused form.

    A fused step with control a and targets T is H_T MQZ(star(a, T)) H_T.
    """
    c = gf2.as_bits(c, "c")
    n = c.shape[0]
    cnots, fused = [], []
    for control, targets in gaussian_steps(c):
        cnots.extend((control, t) for t in targets)
        fused.append(MqGate(Axis.Z, star_matrix(n, control, targets)))
    return cnots, fused


__all__ = [
    "CompiledCircuit",
    "FourGateDecomp",
    "SymplecticMismatch",
    "Variant",
    "canonical_form",
    "commute_hall_left",
    "compile_clifford",
    "compose",
    "conjugate_mqx_through_cx",
    "cx_four_gate",
    "gaussian_cnot_synthesis",
    "gaussian_steps",
    "merge_mq",
    "pauli_correction",
    "recompose",
    "star_matrix",
]
