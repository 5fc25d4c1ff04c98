import itertools

import numpy as np
import pytest

from mqclifford import gf2
from mqclifford.clifford import (
    Axis,
    CliffordOp,
    LayerKind,
    LayerSpec,
    MqGate,
    PauliFrame,
    Tableau,
    compose,
    compose_all,
    cx_layer_symplectic,
    elementary_tableau,
    hadamard_symplectic,
    is_symplectic,
    layer_symplectic,
    mqx_symplectic,
    mqz_symplectic,
    pauli_symplectic,
)
from mqclifford.verify import dense_unitary
from mqclifford.circuit import Circuit, Gate

import oracle
from conftest import all_symmetric


def random_symmetric(rng, n):
    m = rng.integers(0, 2, (n, n), dtype=np.uint8)
    return np.triu(m) ^ np.triu(m, 1).T


def test_mqz_zero_is_identity():
    op = mqz_symplectic(np.zeros((3, 3), np.uint8))
    assert op == CliffordOp.identity(3)


def test_mqz_block_example():
    op = mqz_symplectic(np.array([[0, 1], [1, 0]], np.uint8))
    assert op.s.tolist() == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [1, 0, 0, 1]]
    assert not op.r.any()


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("axis", ["Z", "X"])
def test_mq_exhaustive_against_expm(n, axis):
    build = mqz_symplectic if axis == "Z" else mqx_symplectic
    for xi in all_symmetric(n):
        op = build(xi)
        assert oracle.tableau_agrees(op.s, op.r, oracle.mq_unitary(axis, xi))


def test_mqx_is_hadamard_conjugate():
    rng = np.random.default_rng(0)
    for n in range(1, 9):
        xi = random_symmetric(rng, n)
        h = hadamard_symplectic(n)
        conj = compose_all([h, mqz_symplectic(xi), h], n)
        assert np.array_equal(conj.s, mqx_symplectic(xi).s)


def test_mqz_lower_block_is_additive():
    rng = np.random.default_rng(1)
    for _ in range(100):
        n = int(rng.integers(1, 12))
        a, b = random_symmetric(rng, n), random_symmetric(rng, n)
        ab = compose(mqz_symplectic(a), mqz_symplectic(b))
        assert np.array_equal(ab.s, mqz_symplectic(a ^ b).s)


def test_mq_gate_validation():
    with pytest.raises(ValueError):
        MqGate(Axis.Z, np.array([[0, 1], [0, 0]], np.uint8))
    g = MqGate("X", np.eye(2, dtype=np.uint8))
    assert g.axis is Axis.X and g.n == 2 and not g.is_entangling


def test_cx_identity_and_example():
    assert cx_layer_symplectic(gf2.identity(4)) == CliffordOp.identity(4)
    op = cx_layer_symplectic(np.array([[1, 1], [0, 1]], np.uint8))
    assert op.s[:2, :2].tolist() == [[1, 0], [1, 1]]
    assert op.s[2:, 2:].tolist() == [[1, 1], [0, 1]]
    assert not op.s[:2, 2:].any() and not op.s[2:, :2].any()


def test_cx_composition_law():
    for seed in range(50):
        c1, c2 = gf2.random_invertible(3, seed), gf2.random_invertible(3, seed + 100)
        got = compose(cx_layer_symplectic(c1), cx_layer_symplectic(c2))
        assert got == cx_layer_symplectic(gf2.mul(c1, c2))


def test_single_cnot_against_dense():
    c = gf2.identity(3)
    c[0, 2] = 1  # control 0, target 2
    op = cx_layer_symplectic(c)
    assert oracle.tableau_agrees(op.s, op.r, oracle.cx_unitary(3, 0, 2))


def test_hadamard_examples():
    assert hadamard_symplectic(1).s.tolist() == [[0, 1], [1, 0]]
    h = hadamard_symplectic(4)
    assert compose(h, h) == CliffordOp.identity(4)


def test_sz_all_matches_mqz_identity():
    layer = LayerSpec(LayerKind.SZ, 3, (0, 1, 2))
    assert np.array_equal(layer_symplectic(layer).s, mqz_symplectic(gf2.identity(3)).s)


def _layer_dense(layer):
    n, p = layer.n, layer.payload
    k = layer.kind
    if k is LayerKind.PAULI:
        u = oracle.on(n, {q: oracle.Z for q in np.flatnonzero(p.mu)})
        return oracle.on(n, {q: oracle.X for q in np.flatnonzero(p.eta)}) @ u
    if k is LayerKind.SZ:
        return oracle.mq_unitary("Z", np.diag([int(q in p) for q in range(n)]).astype(np.uint8))
    if k is LayerKind.SX:
        return oracle.mq_unitary("X", np.diag([int(q in p) for q in range(n)]).astype(np.uint8))
    if k is LayerKind.HALL:
        return oracle.on(n, {q: oracle.H for q in range(n)})
    if k is LayerKind.HSUBSET:
        return oracle.on(n, {q: oracle.H for q in p})
    if k is LayerKind.RZZ:
        return oracle.mq_unitary("Z", p)
    if k is LayerKind.RXX:
        return oracle.mq_unitary("X", p)
    if k is LayerKind.MQ:
        return oracle.mq_unitary(p.axis.value, p.xi)
    # CX layer as a permutation: |y> -> |C^-T y>
    a = gf2.inverse(p).T
    u = np.zeros((2**n, 2**n), dtype=complex)
    for y in itertools.product((0, 1), repeat=n):
        out = gf2.mul(a, np.array(y, np.uint8).reshape(-1, 1)).ravel()
        u[int("".join(map(str, out)), 2), int("".join(map(str, y)), 2)] = 1
    return u


def _random_layer(rng, n, kind):
    if kind in (LayerKind.SZ, LayerKind.SX, LayerKind.HSUBSET):
        return LayerSpec(kind, n, tuple(np.flatnonzero(rng.integers(0, 2, n))))
    if kind is LayerKind.PAULI:
        return LayerSpec(kind, n, PauliFrame(rng.integers(0, 2, n), rng.integers(0, 2, n)))
    if kind in (LayerKind.RZZ, LayerKind.RXX):
        m = random_symmetric(rng, n)
        np.fill_diagonal(m, 0)
        return LayerSpec(kind, n, m)
    if kind is LayerKind.CXLAYER:
        return LayerSpec(kind, n, gf2.random_invertible(n, int(rng.integers(1 << 30))))
    if kind is LayerKind.MQ:
        return LayerSpec(kind, n, MqGate(rng.choice(["X", "Z"]), random_symmetric(rng, n)))
    return LayerSpec(kind, n)


@pytest.mark.parametrize("kind", list(LayerKind))
def test_every_layer_kind_against_dense(kind):
    rng = np.random.default_rng(7)
    for n in (1, 2, 3):
        for _ in range(6):
            layer = _random_layer(rng, n, kind)
            op = layer_symplectic(layer)
            assert is_symplectic(op)
            assert oracle.tableau_agrees(op.s, op.r, _layer_dense(layer)), layer


def test_compose_examples():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        layer = _random_layer(rng, n, LayerKind.MQ)
        u = layer_symplectic(layer)
        assert compose(u, CliffordOp.identity(n)) == u
        assert compose(CliffordOp.identity(n), u) == u


def test_compose_random_pairs_against_dense():
    rng = np.random.default_rng(4)
    kinds = list(LayerKind)
    for _ in range(60):
        n = int(rng.integers(1, 4))
        a = _random_layer(rng, n, kinds[rng.integers(len(kinds))])
        b = _random_layer(rng, n, kinds[rng.integers(len(kinds))])
        ab = compose(layer_symplectic(a), layer_symplectic(b))
        u = _layer_dense(a) @ _layer_dense(b)
        assert oracle.tableau_agrees(ab.s, ab.r, u)


def test_is_symplectic():
    assert is_symplectic(CliffordOp.identity(3))
    s = np.eye(4, dtype=np.uint8)
    s[1] = 0
    assert not is_symplectic(CliffordOp(s, np.zeros(4, np.uint8)))


def test_pauli_frame_signs():
    op = pauli_symplectic(PauliFrame(eta=[1, 0], mu=[0, 1]))
    assert np.array_equal(op.s, gf2.identity(4))
    # X on qubit 0 flips the Z_0 image, Z on qubit 1 flips the X_1 image
    assert op.r.tolist() == [0, 1, 1, 0]


@pytest.mark.parametrize("name", ["H", "S", "SDG", "SX", "X", "Y", "Z", "CX", "CZ"])
def test_elementary_tables_against_dense(name):
    if name == "CX":
        dense = oracle.cx_unitary(2, 0, 1)
    elif name == "CZ":
        dense = np.diag([1, 1, 1, -1]).astype(complex)
    else:
        dense = _local(name)
    op = elementary_tableau(name)
    assert oracle.tableau_agrees(op.s, op.r, dense)


def test_tableau_simulator_against_dense():
    rng = np.random.default_rng(8)
    names = ["H", "S", "SDG", "SX", "X", "Y", "Z", "CX", "CZ"]
    for _ in range(40):
        n = int(rng.integers(2, 4))
        tab = Tableau(n)
        u = np.eye(2**n, dtype=complex)
        for _ in range(12):
            name = names[rng.integers(len(names))]
            if name in ("CX", "CZ"):
                a, b = (int(q) for q in rng.choice(n, 2, replace=False))
                tab.apply(name, a, b)
                if name == "CX":
                    g = oracle.cx_unitary(n, a, b)
                else:
                    g = oracle.on(n, {a: np.diag([1, 0]).astype(complex)}) + oracle.on(
                        n, {a: np.diag([0, 1]).astype(complex), b: oracle.Z}
                    )
            else:
                q = int(rng.integers(n))
                tab.apply(name, q)
                g = oracle.on(n, {q: _local(name)})
            u = g @ u
        op = tab.to_op()
        assert is_symplectic(op)
        assert oracle.tableau_agrees(op.s, op.r, u)


def _local(name):
    return {
        "H": oracle.H,
        "S": np.diag([1, 1j]),
        "SDG": np.diag([1, -1j]),
        "SX": np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2,
        "X": oracle.X,
        "Y": oracle.Y,
        "Z": oracle.Z,
    }[name]


def test_package_dense_matches_expm_oracle():
    rng = np.random.default_rng(9)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        xi = random_symmetric(rng, n)
        axis = str(rng.choice(["X", "Z"]))
        circ = Circuit(n, [Gate("MQ" + axis, xi=xi)])
        assert oracle.same_up_to_phase(dense_unitary(circ), oracle.mq_unitary(axis, xi))


def test_layer_spec_validation():
    with pytest.raises(ValueError):
        LayerSpec(LayerKind.SZ, 2, (0, 2))
    with pytest.raises(ValueError):
        LayerSpec(LayerKind.RZZ, 2, np.eye(2, dtype=np.uint8))
    with pytest.raises(ValueError):
        LayerSpec(LayerKind.HALL, 2, (0,))
    with pytest.raises(ValueError):
        LayerSpec(LayerKind.PAULI, 3, PauliFrame.zero(2))
