"""Correctness oracles for compiled circuits.

Two routes, both independent of the symplectic constructors used by the
compiler:

* gate-by-gate stabilizer simulation (:func:`tableau_of_circuit`), where
  every layer is expanded into elementary gates with frozen lookup tables;
* a dense unitary (:func:`dense_unitary`, n <= 5) built from the rotation
  exponents of each gate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .clifford import Axis, CliffordOp, LayerKind, LayerSpec, MqGate, PauliFrame, Tableau
from .circuit import Circuit, Gate
from .synth import CompiledCircuit

DENSE_MAX_QUBITS = 5
DENSE_TOL = 1e-9

CircuitLike = Union[CompiledCircuit, Circuit, Sequence[Gate]]


@dataclass(frozen=True)
class VerifyReport:
    symplectic_match: bool
    sign_match: bool
    dense_match: Optional[bool]
    first_discrepancy: str

    @property
    def ok(self) -> bool:
        return self.symplectic_match and self.sign_match and self.dense_match is not False

    def __str__(self):
        dense = "n/a" if self.dense_match is None else str(self.dense_match).lower()
        lines = [
            f"symplectic_match: {str(self.symplectic_match).lower()}",
            f"sign_match: {str(self.sign_match).lower()}",
            f"dense_match: {dense}",
            f"first_discrepancy: {self.first_discrepancy or 'none'}",
        ]
        return "\n".join(lines)


# --- expansion into elementary gates ----------------------------------------


def _cx_network(c: np.ndarray) -> list[tuple[int, int]]:
    """CNOTs (control, target) in time order whose layer matrix is ``c``.

    Column elimination: ``c @ (I + E_ab)`` adds column a to column b and is
    the CNOT with control a, target b.
    """
    m = np.array(c, dtype=np.uint8)
    n = m.shape[0]
    ops = []

    def colop(a, b):
        m[:, b] ^= m[:, a]
        ops.append((a, b))

    for i in range(n):
        if not m[i, i]:
            cand = [p for p in range(i + 1, n) if m[i, p]]
            if not cand:
                raise ValueError("CX layer matrix is singular")
            colop(cand[0], i)
        for b in range(n):
            if b != i and m[i, b]:
                colop(i, b)
    return ops


def _mq_gates(gate: MqGate) -> list[tuple[str, tuple[int, ...]]]:
    n = gate.n
    core = []
    for k in range(n):
        if gate.xi[k, k]:
            core.append(("S", (k,)))
    for k in range(n):
        for j in range(k + 1, n):
            if gate.xi[k, j]:
                core.append(("CZ", (k, j)))
    if gate.axis is Axis.Z:
        return core
    hs = [("H", (q,)) for q in range(n)]
    return hs + core + hs


def _layer_gates(layer: LayerSpec) -> list[tuple[str, tuple[int, ...]]]:
    kind, n, p = layer.kind, layer.n, layer.payload
    if kind is LayerKind.PAULI:
        return [("Z", (q,)) for q in np.flatnonzero(p.mu)] + [
            ("X", (q,)) for q in np.flatnonzero(p.eta)
        ]
    if kind is LayerKind.SZ:
        return [("S", (q,)) for q in p]
    if kind is LayerKind.SX:
        return [("SX", (q,)) for q in p]
    if kind is LayerKind.HALL:
        return [("H", (q,)) for q in range(n)]
    if kind is LayerKind.HSUBSET:
        return [("H", (q,)) for q in p]
    if kind is LayerKind.RZZ:
        return _mq_gates(MqGate(Axis.Z, p))
    if kind is LayerKind.RXX:
        return _mq_gates(MqGate(Axis.X, p))
    if kind is LayerKind.CXLAYER:
        return [("CX", ct) for ct in _cx_network(p)]
    if kind is LayerKind.MQ:
        return _mq_gates(p)
    raise ValueError(f"unknown layer kind {kind!r}")


def _circuit_gates(gate: Gate, n: int) -> list[tuple[str, tuple[int, ...]]]:
    t = gate.type
    if t in ("MQZ", "MQX"):
        return _mq_gates(MqGate(t[-1], gate.xi))
    if t in ("RZZ", "RXX"):
        xi = np.zeros((n, n), dtype=np.uint8)
        a, b = gate.qubits
        xi[a, b] = xi[b, a] = 1
        return _mq_gates(MqGate(t[-1], xi))
    return [(t, gate.qubits)]


def _flatten(circ: CircuitLike) -> tuple[int, list[tuple[str, tuple[int, ...]]]]:
    if isinstance(circ, CompiledCircuit):
        ops = []
        for layer in circ.layers:
            ops.extend(_layer_gates(layer))
        return circ.n, ops
    if isinstance(circ, Circuit):
        ops = []
        for g in circ.gates:
            ops.extend(_circuit_gates(g, circ.n))
        return circ.n, ops
    raise TypeError(f"cannot interpret {type(circ).__name__} as a circuit")


# --- stabilizer route -------------------------------------------------------


def tableau_of_circuit(circ: CircuitLike) -> CliffordOp:
    """Sign-exact tableau of a circuit, folded gate by gate in time order."""
    n, ops = _flatten(circ)
    tab = Tableau(n)
    for name, qubits in ops:
        tab.apply(name, *qubits)
    return tab.to_op()


# --- dense route ------------------------------------------------------------

_SQ = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "S": np.diag([1, 1j]),
    "SDG": np.diag([1, -1j]),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1.0 + 0j, -1.0]),
}
_SQ["SX"] = _SQ["H"] @ _SQ["S"] @ _SQ["H"]
_TQ = {
    "CX": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}


def _apply_local(u: np.ndarray, mat: np.ndarray, qubits, n: int) -> np.ndarray:
    """Left-multiply ``u`` by ``mat`` acting on ``qubits`` (qubit 0 is the most significant bit)."""
    k = len(qubits)
    t = u.reshape((2,) * n + (-1,))
    t = np.moveaxis(t, list(qubits), list(range(k)))
    shape = t.shape
    t = (mat @ t.reshape(2**k, -1)).reshape(shape)
    t = np.moveaxis(t, list(range(k)), list(qubits))
    return t.reshape(2**n, -1)


def _z_eigs(n: int) -> np.ndarray:
    """``zs[b, q]`` is the Z eigenvalue (+1/-1) of qubit q in basis state b."""
    b = np.arange(2**n)
    bits = (b[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    return 1 - 2 * bits


def mq_dense(gate: MqGate) -> np.ndarray:
    """Dense global gate from its rotation exponents.

    Diagonal entries are ``exp(-i pi/4 P_k)``; each coupled pair is
    ``exp(i pi/4 (P_k P_j - P_k - P_j))``. Up to a global phase the
    Z-axis gate is ``diag(i**(x^T xi x))``.
    """
    n = gate.n
    z = _z_eigs(n)
    theta = np.zeros(2**n)
    for k in range(n):
        if gate.xi[k, k]:
            theta -= np.pi / 4 * z[:, k]
        for j in range(k + 1, n):
            if gate.xi[k, j]:
                theta += np.pi / 4 * (z[:, k] * z[:, j] - z[:, k] - z[:, j])
    u = np.diag(np.exp(1j * theta))
    if gate.axis is Axis.X:
        h = np.ones((1, 1), dtype=complex)
        for _ in range(n):
            h = np.kron(h, _SQ["H"])
        u = h @ u @ h
    return u


def cx_layer_dense(c: np.ndarray) -> np.ndarray:
    """Permutation ``|y> -> |A y>`` with ``A = C^-T``, i.e. ``U[y, C^T y] = 1``."""
    c = np.asarray(c, dtype=np.int64)
    n = c.shape[0]
    dim = 2**n
    bits = (np.arange(dim)[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    src = (bits @ c) % 2  # row y holds C^T y
    weights = 1 << (n - 1 - np.arange(n))
    u = np.zeros((dim, dim), dtype=complex)
    u[np.arange(dim), src @ weights] = 1
    return u


def _pauli_dense(frame: PauliFrame) -> np.ndarray:
    u = np.ones((1, 1), dtype=complex)
    for q in range(frame.n):
        m = np.linalg.matrix_power(_SQ["X"], int(frame.eta[q])) @ np.linalg.matrix_power(
            _SQ["Z"], int(frame.mu[q])
        )
        u = np.kron(u, m)
    return u


def _layer_dense(layer: LayerSpec) -> np.ndarray:
    kind, n, p = layer.kind, layer.n, layer.payload
    if kind is LayerKind.PAULI:
        return _pauli_dense(p)
    if kind is LayerKind.MQ:
        return mq_dense(p)
    if kind is LayerKind.CXLAYER:
        return cx_layer_dense(p)
    if kind in (LayerKind.RZZ, LayerKind.RXX):
        return mq_dense(MqGate(kind.value[-1], p))
    u = np.eye(2**n, dtype=complex)
    name = {LayerKind.SZ: "S", LayerKind.SX: "SX"}.get(kind, "H")
    qubits = range(n) if kind is LayerKind.HALL else p
    for q in qubits:
        u = _apply_local(u, _SQ[name], (q,), n)
    return u


def dense_unitary(circ: CircuitLike, n: Optional[int] = None) -> np.ndarray:
    """Exact 2**n x 2**n unitary of a circuit (n <= 5)."""
    if isinstance(circ, (CompiledCircuit, Circuit)):
        n = circ.n
    if n is None:
        raise ValueError("qubit count required")
    if n > DENSE_MAX_QUBITS:
        raise ValueError(f"dense oracle is limited to n <= {DENSE_MAX_QUBITS}, got {n}")
    u = np.eye(2**n, dtype=complex)
    if isinstance(circ, CompiledCircuit):
        for layer in circ.layers:
            u = _layer_dense(layer) @ u
        return u
    for g in circ.gates:
        if g.type in ("MQZ", "MQX"):
            u = mq_dense(MqGate(g.type[-1], g.xi)) @ u
        elif g.type in ("RZZ", "RXX"):
            xi = np.zeros((n, n), dtype=np.uint8)
            a, b = g.qubits
            xi[a, b] = xi[b, a] = 1
            u = mq_dense(MqGate(g.type[-1], xi)) @ u
        else:
            mat = _SQ.get(g.type)
            if mat is None:
                mat = _TQ[g.type]
            u = _apply_local(u, mat, g.qubits, n)
    return u


def normalize_phase(u: np.ndarray) -> np.ndarray:
    """Divide by the phase of the first entry of maximal magnitude."""
    flat = u.ravel()
    mag = np.abs(flat)
    k = int(np.flatnonzero(mag >= mag.max() - 1e-12)[0])
    return u * (abs(flat[k]) / flat[k])


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = DENSE_TOL) -> bool:
    if a.shape != b.shape:
        return False
    return float(np.max(np.abs(normalize_phase(a) - normalize_phase(b)))) <= tol


def clifford_dense_action(op: CliffordOp) -> list[np.ndarray]:
    """Dense images ``(-1)**r P(s[:, j])`` of all 2n generators."""
    n = op.n
    out = []
    for j in range(2 * n):
        m = np.ones((1, 1), dtype=complex)
        for q in range(n):
            x, z = op.s[q, j], op.s[n + q, j]
            m = np.kron(m, _SQ["Y"] if x and z else _SQ["X"] if x else _SQ["Z"] if z else _SQ["I"])
        out.append((-1) ** int(op.r[j]) * m)
    return out


def generator_dense(n: int, j: int) -> np.ndarray:
    m = np.ones((1, 1), dtype=complex)
    for q in range(n):
        m = np.kron(m, _SQ["X"] if q == j else _SQ["Z"] if q == j - n else _SQ["I"])
    return m


def tableau_matches_unitary(op: CliffordOp, u: np.ndarray, tol: float = DENSE_TOL) -> bool:
    """Check ``u g_j u^dag`` against the tableau image for every generator."""
    n = op.n
    images = clifford_dense_action(op)
    for j in range(2 * n):
        conj = u @ generator_dense(n, j) @ u.conj().T
        if np.max(np.abs(conj - images[j])) > tol:
            return False
    return True


def verify_compilation(
    target: CliffordOp, candidate: CircuitLike, dense: Optional[bool] = None
) -> VerifyReport:
    """Compare a candidate circuit against a target tableau.

    ``dense`` defaults to on whenever n <= 5.
    """
    got = tableau_of_circuit(candidate)
    if got.n != target.n:
        raise ValueError(f"dimension mismatch: target n={target.n}, candidate n={got.n}")
    n = target.n
    sym = bool(np.array_equal(got.s, target.s))
    sign = sym and bool(np.array_equal(got.r, target.r))
    problem = ""
    if not sym:
        j = int(np.flatnonzero((got.s != target.s).any(axis=0))[0])
        problem = f"symplectic column {j} ({_gen_name(j, n)}) differs"
    elif not sign:
        j = int(np.flatnonzero(got.r != target.r)[0])
        problem = f"sign of {_gen_name(j, n)} image differs"
    dense_ok = None
    if dense is None:
        dense = n <= DENSE_MAX_QUBITS
    if dense:
        u = dense_unitary(candidate, n)
        dense_ok = tableau_matches_unitary(target, u)
        if not dense_ok and not problem:
            problem = "dense unitary disagrees with target action"
    return VerifyReport(sym, sign, dense_ok, problem)


def _gen_name(j: int, n: int) -> str:
    return f"X{j}" if j < n else f"Z{j - n}"
