"""Clifford compilation onto global multiqubit entangling gates.

Any n-qubit Clifford is rewritten as single-qubit layers plus at most four
programmable all-to-all gates (see :func:`compile_clifford`).
"""

from .circuit import Circuit, Gate, random_clifford_circuit
from .clifford import (
    Axis,
    CliffordOp,
    LayerKind,
    LayerSpec,
    MqGate,
    PauliFrame,
    compose,
    cx_layer_symplectic,
    is_symplectic,
    layer_symplectic,
    mqx_symplectic,
    mqz_symplectic,
)
from .cost import BenchConfig, circuit_power, nuclear_norm, power_law_fit, run_benchmark
from .gf2 import Singular, inverse, mul, random_invertible, rank, symmetric_pair_factor
from .synth import (
    CompiledCircuit,
    Variant,
    canonical_form,
    commute_hall_left,
    compile_clifford,
    conjugate_mqx_through_cx,
    cx_four_gate,
    gaussian_cnot_synthesis,
    merge_mq,
    pauli_correction,
)
from .verify import dense_unitary, tableau_of_circuit, verify_compilation

__version__ = "0.1.0"
