"""Plain gate-list circuits and random instance generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import gf2

GATE_QUBITS = {"H": 1, "S": 1, "X": 1, "Y": 1, "Z": 1, "CX": 2, "RZZ": 2, "RXX": 2}
MATRIX_GATES = ("MQZ", "MQX")
GATE_TYPES = tuple(GATE_QUBITS) + MATRIX_GATES


@dataclass(frozen=True, eq=False)
class Gate:
    """One gate. ``CX`` qubits are ``(control, target)``; MQ gates carry ``xi``.

    ``RZZ``/``RXX`` on ``(a, b)`` are the global gates whose coupling matrix
    has the single pair ``(a, b)`` set.
    """

    type: str
    qubits: tuple = ()
    xi: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        if self.type not in GATE_TYPES:
            raise ValueError(f"unknown gate type {self.type!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.type in MATRIX_GATES:
            if self.xi is None or self.qubits:
                raise ValueError(f"{self.type} takes an xi matrix and no qubits")
            xi = gf2.as_bits(self.xi, "xi")
            if not gf2.is_symmetric(xi):
                raise ValueError(f"{self.type}: xi must be symmetric")
            object.__setattr__(self, "xi", xi)
        else:
            if self.xi is not None:
                raise ValueError(f"{self.type} takes no matrix")
            if len(self.qubits) != GATE_QUBITS[self.type]:
                raise ValueError(f"{self.type} acts on {GATE_QUBITS[self.type]} qubit(s)")
            if len(set(self.qubits)) != len(self.qubits):
                raise ValueError(f"{self.type}: repeated qubit in {self.qubits}")

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        if self.type != other.type or self.qubits != other.qubits:
            return False
        if self.xi is None or other.xi is None:
            return self.xi is None and other.xi is None
        return np.array_equal(self.xi, other.xi)

    def __repr__(self):
        if self.xi is not None:
            return f"Gate({self.type}, xi={self.xi.tolist()})"
        return f"Gate({self.type}, {self.qubits})"


@dataclass(frozen=True, eq=False)
class Circuit:
    n: int
    gates: tuple = ()

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if g.xi is not None and g.xi.shape != (self.n, self.n):
                raise ValueError(f"{g.type}: xi must be {self.n}x{self.n}")
            if any(q < 0 or q >= self.n for q in g.qubits):
                raise ValueError(f"{g.type}: qubit out of range for n={self.n}")

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n == other.n and self.gates == other.gates

    def __len__(self):
        return len(self.gates)


def random_clifford_circuit(n: int, seed=None, length: Optional[int] = None) -> Circuit:
    """Random H/S/CX circuit with at least n**2 gates."""
    rng = np.random.default_rng(seed)
    length = max(n * n, 8) if length is None else length
    gates = []
    for _ in range(length):
        kind = rng.integers(0, 3) if n > 1 else rng.integers(0, 2)
        if kind == 0:
            gates.append(Gate("H", (int(rng.integers(n)),)))
        elif kind == 1:
            gates.append(Gate("S", (int(rng.integers(n)),)))
        else:
            a, b = rng.choice(n, size=2, replace=False)
            gates.append(Gate("CX", (int(a), int(b))))
    return Circuit(n, gates)


def cx_circuit(cnots, n: int) -> Circuit:
    return Circuit(n, [Gate("CX", (c, t)) for c, t in cnots])
