import numpy as np
import pytest

import oracle
from conftest import random_clifford
from mqclifford import gf2
from mqclifford.circuit import Circuit, Gate, cx_circuit
from mqclifford.clifford import (
    Axis,
    CliffordOp,
    LayerKind,
    LayerSpec,
    MqGate,
    PauliFrame,
    compose,
    compose_all,
    cx_layer_symplectic,
    hadamard_symplectic,
    is_symplectic,
    layers_symplectic,
    mqx_symplectic,
    mqz_symplectic,
    pauli_symplectic,
)
from mqclifford.synth import (
    SymplecticMismatch,
    Variant,
    canonical_form,
    commute_hall_left,
    compile_clifford,
    conjugate_mqx_through_cx,
    cx_four_gate,
    gaussian_cnot_synthesis,
    gaussian_steps,
    merge_mq,
    pauli_correction,
    recompose,
)
from mqclifford.verify import dense_unitary, tableau_of_circuit, verify_compilation


def _sym(rng, n):
    m = rng.integers(0, 2, (n, n), dtype=np.uint8)
    return np.triu(m) ^ np.triu(m, 1).T


def _gate_dense(gate):
    return oracle.mq_unitary(gate.axis.value, gate.xi)


def _frame_dense(frame):
    n = frame.n
    u = oracle.on(n, {q: oracle.Z for q in np.flatnonzero(frame.mu)})
    return oracle.on(n, {q: oracle.X for q in np.flatnonzero(frame.eta)}) @ u


# --- canonical form ---------------------------------------------------------


def test_canonical_identity_is_trivial():
    layers = canonical_form(CliffordOp.identity(3))
    assert [layer.kind for layer in layers] == [
        LayerKind.PAULI, LayerKind.CXLAYER, LayerKind.RZZ, LayerKind.SZ,
        LayerKind.HALL, LayerKind.RZZ, LayerKind.SZ, LayerKind.HSUBSET,
    ]
    assert layers[0].payload.is_identity
    assert np.array_equal(layers[1].payload, gf2.identity(3))
    for layer in (layers[2], layers[5]):
        assert not layer.payload.any()
    assert layers[3].payload == () and layers[6].payload == ()
    # Hall twice is the identity, so the final subset must be every qubit
    assert layers[7].payload == (0, 1, 2)


def test_canonical_single_hadamard():
    u = hadamard_symplectic(1)
    layers = canonical_form(u)
    assert layers_symplectic(layers, 1) == u
    # the Hall layer already supplies the Hadamard; everything else is trivial
    assert layers[7].payload == ()
    assert np.array_equal(layers[1].payload, gf2.identity(1))
    assert not layers[2].payload.any() and not layers[5].payload.any()
    assert layers[3].payload == () and layers[6].payload == ()


def test_canonical_recomposes_random():
    for seed in range(500):
        n = 1 + seed % 16
        u = random_clifford(n, seed)
        assert layers_symplectic(canonical_form(u), n) == u


def test_commute_hall_left_shape_and_invariance():
    for seed in range(100):
        n = 1 + seed % 10
        u = random_clifford(n, 500 + seed)
        moved = commute_hall_left(canonical_form(u))
        assert [layer.kind for layer in moved] == [
            LayerKind.PAULI, LayerKind.HALL, LayerKind.CXLAYER, LayerKind.RXX,
            LayerKind.SX, LayerKind.RZZ, LayerKind.SZ, LayerKind.HSUBSET,
        ]
        assert layers_symplectic(moved, n) == u


def test_commute_hall_left_rzz_pair_becomes_rxx():
    n = 2
    pair = np.array([[0, 1], [1, 0]], np.uint8)
    layers = [
        LayerSpec(LayerKind.PAULI, n, PauliFrame.zero(n)),
        LayerSpec(LayerKind.CXLAYER, n, gf2.identity(n)),
        LayerSpec(LayerKind.RZZ, n, pair),
        LayerSpec(LayerKind.SZ, n, ()),
        LayerSpec(LayerKind.HALL, n),
        LayerSpec(LayerKind.RZZ, n, np.zeros((n, n), np.uint8)),
        LayerSpec(LayerKind.SZ, n, ()),
        LayerSpec(LayerKind.HSUBSET, n, ()),
    ]
    moved = commute_hall_left(layers)
    assert moved[3] == LayerSpec(LayerKind.RXX, n, pair)
    assert layers_symplectic(moved, n) == layers_symplectic(layers, n)


def test_commute_hall_left_trivial():
    n = 2
    layers = canonical_form(CliffordOp.identity(n))
    moved = commute_hall_left(layers)
    assert np.array_equal(moved[2].payload, gf2.identity(n))
    assert not moved[3].payload.any() and moved[4].payload == ()


def test_commute_hall_left_rejects_wrong_shape():
    with pytest.raises(ValueError):
        commute_hall_left(canonical_form(CliffordOp.identity(2))[1:])


# --- commutation through a CX layer ------------------------------------------


def test_conjugate_examples():
    m = np.array([[1, 0], [0, 0]], np.uint8)
    c = np.array([[1, 1], [0, 1]], np.uint8)
    assert conjugate_mqx_through_cx(m, c).tolist() == [[1, 1], [1, 1]]
    assert np.array_equal(conjugate_mqx_through_cx(m, gf2.identity(2)), m)
    assert not conjugate_mqx_through_cx(np.zeros((2, 2), np.uint8), c).any()
    with pytest.raises(gf2.Singular):
        conjugate_mqx_through_cx(m, np.ones((2, 2), np.uint8))


def test_conjugate_symplectic_identity():
    rng = np.random.default_rng(0)
    for seed in range(100):
        n = int(rng.integers(1, 20))
        m, c = _sym(rng, n), gf2.random_invertible(n, seed)
        moved = conjugate_mqx_through_cx(m, c)
        assert gf2.is_symmetric(moved)
        lhs = compose(mqx_symplectic(m), cx_layer_symplectic(c))
        rhs = compose(cx_layer_symplectic(c), mqx_symplectic(moved))
        assert np.array_equal(lhs.s, rhs.s)


# --- four-gate CX decomposition ----------------------------------------------


def _block_product(d):
    n = d.e1.shape[0]
    z, i = np.zeros((n, n), np.uint8), gf2.identity(n)
    lower = lambda m: np.block([[i, z], [m, i]])  # noqa: E731
    upper = lambda m: np.block([[i, m], [z, i]])  # noqa: E731
    return gf2.mul_chain(lower(d.g), upper(d.e1), lower(d.f), upper(d.e2))


def test_four_gate_identity_layer():
    d = cx_four_gate(gf2.identity(3))
    assert np.array_equal(d.e1, gf2.identity(3)) and np.array_equal(d.e2, gf2.identity(3))
    assert not d.f.any() and not d.g.any()
    # two X quarter turns on every qubit leave X on every qubit
    assert d.frame.eta.tolist() == [1, 1, 1] and not d.frame.mu.any()
    u = _frame_dense(d.frame)
    for g in d.gates():
        u = _gate_dense(g) @ u
    assert oracle.same_up_to_phase(u, np.eye(8))


def test_four_gate_hand_example():
    c = np.array([[1, 1], [0, 1]], np.uint8)
    d = cx_four_gate(c)
    assert d.e1.tolist() == [[0, 1], [1, 0]]
    assert d.e2.tolist() == [[0, 1], [1, 1]]
    assert d.f.tolist() == [[1, 0], [0, 0]]
    assert d.g.tolist() == [[1, 0], [0, 0]]
    i = gf2.identity(2)
    assert np.array_equal(i ^ gf2.mul(d.e1, d.f), gf2.inverse(c).T)
    assert np.array_equal(i ^ gf2.mul(d.f, d.e2), c)


def check_four_gate_identities(c, d):
    n = c.shape[0]
    i = gf2.identity(n)
    c_it = gf2.inverse(c).T
    for m in (d.e1, d.e2, d.f, d.g):
        assert gf2.is_symmetric(m)
    assert gf2.is_invertible(d.e1) and gf2.is_invertible(d.e2)
    assert np.array_equal(d.f, gf2.inverse(d.e1) ^ gf2.inverse(d.e2))
    assert np.array_equal(d.g, gf2.mul(d.f, c.T))
    top_left = i ^ gf2.mul(d.e1, d.f)
    assert np.array_equal(top_left, c_it)
    assert np.array_equal(i ^ gf2.mul(d.f, d.e2), c)
    assert not (gf2.mul(top_left, d.e2) ^ d.e1).any()
    assert not (gf2.mul(d.g, top_left) ^ d.f).any()
    z = np.zeros((n, n), np.uint8)
    assert np.array_equal(_block_product(d), np.block([[c_it, z], [z, c]]))


def test_four_gate_random_block_identity():
    for seed in range(60):
        n = 2 + seed % 63
        c = gf2.random_invertible(n, seed)
        check_four_gate_identities(c, cx_four_gate(c))


def test_four_gate_dense_small():
    for seed in range(40):
        n = 1 + seed % 3
        c = gf2.random_invertible(n, seed)
        d = cx_four_gate(c)
        u = _frame_dense(d.frame)
        for g in d.gates():
            u = _gate_dense(g) @ u
        assert oracle.same_up_to_phase(u, dense_unitary(cx_circuit(_cnots(c), n)))


def _cnots(c):
    cnots, _ = gaussian_cnot_synthesis(c)
    return cnots


def test_four_gate_singular():
    with pytest.raises(gf2.Singular):
        cx_four_gate(np.ones((2, 2), np.uint8))


# --- Pauli correction --------------------------------------------------------


def test_pauli_correction_examples():
    u = random_clifford(4, 1)
    assert pauli_correction(u, [u]).is_identity
    x0 = pauli_symplectic(PauliFrame(eta=[1, 0, 0], mu=[0, 0, 0]))
    frame = pauli_correction(CliffordOp.identity(3), [x0])
    assert frame.eta.tolist() == [1, 0, 0] and not frame.mu.any()
    with pytest.raises(SymplecticMismatch):
        pauli_correction(CliffordOp.identity(2), [hadamard_symplectic(2)])


def test_pauli_correction_restores_signs():
    rng = np.random.default_rng(5)
    for seed in range(50):
        n = int(rng.integers(1, 12))
        u = random_clifford(n, seed)
        r = u.r ^ rng.integers(0, 2, 2 * n, dtype=np.uint8)
        wrong = CliffordOp(u.s, r)
        frame = pauli_correction(u, [wrong])
        assert compose(wrong, pauli_symplectic(frame)) == u


# --- merging same-axis gates -------------------------------------------------


def test_merge_with_zero():
    rng = np.random.default_rng(6)
    a = MqGate(Axis.Z, _sym(rng, 3))
    merged, frame = merge_mq(a, MqGate(Axis.Z, np.zeros((3, 3), np.uint8)))
    assert merged == a and frame.is_identity


@pytest.mark.parametrize("axis", ["X", "Z"])
def test_merge_with_itself_is_pauli_residue(axis):
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        a = MqGate(axis, _sym(rng, n))
        merged, frame = merge_mq(a, a)
        assert not merged.xi.any()
        assert oracle.same_up_to_phase(_frame_dense(frame), _gate_dense(a) @ _gate_dense(a))


def test_merge_single_pair_squared():
    pair = MqGate(Axis.Z, np.array([[0, 1], [1, 0]], np.uint8))
    merged, frame = merge_mq(pair, pair)
    # the coupling is CZ-type, so its square has no Pauli residue
    assert not merged.xi.any() and frame.is_identity
    both = MqGate(Axis.Z, np.ones((2, 2), np.uint8))
    _, frame = merge_mq(both, both)
    assert frame.mu.tolist() == [1, 1] and not frame.eta.any()


@pytest.mark.parametrize("axis", ["X", "Z"])
def test_merge_random_pairs_dense(axis):
    rng = np.random.default_rng(8)
    for _ in range(40):
        n = int(rng.integers(1, 4))
        a, b = MqGate(axis, _sym(rng, n)), MqGate(axis, _sym(rng, n))
        merged, frame = merge_mq(a, b)
        lhs = _gate_dense(merged) @ _frame_dense(frame)
        assert oracle.same_up_to_phase(lhs, _gate_dense(a) @ _gate_dense(b))


def test_merge_axis_mismatch():
    with pytest.raises(ValueError):
        merge_mq(MqGate("X", np.eye(2, dtype=np.uint8)), MqGate("Z", np.eye(2, dtype=np.uint8)))


# --- full compilation --------------------------------------------------------


def test_compile_identity():
    for variant in Variant:
        out = compile_clifford(CliffordOp.identity(5), variant)
        assert out.mq_count == 0
        assert recompose(out) == CliffordOp.identity(5)


def test_compile_single_cnot():
    u = tableau_of_circuit(Circuit(2, [Gate("CX", (0, 1))]))
    for variant in Variant:
        out = compile_clifford(u, variant)
        assert out.mq_count <= 4
        assert verify_compilation(u, out).ok


@pytest.mark.parametrize("variant", list(Variant))
def test_compile_random(variant):
    for seed in range(120):
        n = 2 + seed % 40
        u = random_clifford(n, seed)
        out = compile_clifford(u, variant)
        assert out.mq_count <= 4
        assert recompose(out) == u
        assert tableau_of_circuit(out) == u


def test_compile_pure_cx_axis_order():
    for seed in range(30):
        n = 2 + seed % 20
        c = gf2.random_invertible(n, seed)
        if np.array_equal(c, gf2.identity(n)):
            continue
        u = cx_layer_symplectic(c)
        xz = compile_clifford(u, Variant.XZ)
        assert [g.axis.value for g in xz.mq_gates] == ["X", "Z", "X", "Z"]
        zx = compile_clifford(u, Variant.ZX)
        assert zx.mq_count <= 4 and recompose(zx) == u


def test_compile_small_dense():
    for seed in range(30):
        n = 1 + seed % 4
        u = random_clifford(n, 900 + seed)
        for variant in Variant:
            report = verify_compilation(u, compile_clifford(u, variant), dense=True)
            assert report.ok, str(report)


def test_compiled_layers_are_symplectic():
    u = random_clifford(6, 3)
    for layer in compile_clifford(u).layers:
        assert is_symplectic(layers_symplectic([layer], 6))


# --- Gaussian elimination baseline --------------------------------------------


def test_gaussian_identity():
    cnots, fused = gaussian_cnot_synthesis(gf2.identity(4))
    assert cnots == [] and fused == []


def test_gaussian_hand_example():
    cnots, fused = gaussian_cnot_synthesis(np.array([[1, 1], [0, 1]], np.uint8))
    assert cnots == [(0, 1)]
    assert len(fused) == 1
    assert fused[0].xi.tolist() == [[0, 1], [1, 0]]


def _fused_step_symplectic(n, control, targets):
    h = hadamard_symplectic(n, targets)
    xi = np.zeros((n, n), np.uint8)
    xi[control, targets] = xi[targets, control] = 1
    return compose_all([h, mqz_symplectic(xi), h], n)


def test_gaussian_recomposition():
    for seed in range(80):
        n = 1 + seed % 30
        c = gf2.random_invertible(n, seed)
        cnots, fused = gaussian_cnot_synthesis(c)
        got = tableau_of_circuit(cx_circuit(cnots, n))
        assert np.array_equal(got.s, cx_layer_symplectic(c).s)
        steps = gaussian_steps(c)
        assert len(steps) == len(fused)
        ops = [_fused_step_symplectic(n, a, t) for a, t in steps]
        assert np.array_equal(compose_all(ops, n).s, cx_layer_symplectic(c).s)


def test_gaussian_singular():
    with pytest.raises(gf2.Singular):
        gaussian_cnot_synthesis(np.zeros((2, 2), np.uint8))
