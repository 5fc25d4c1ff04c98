"""JSON circuit files and compiled-circuit files.

Circuit file::

    {"n": 2, "gates": [
      {"type": "H", "qubits": [0]},
      {"type": "CX", "qubits": [0, 1]},
      {"type": "MQZ", "xi": [[0, 1], [1, 0]]}
    ]}

Compiled file: ``{"format": "compiled", "n", "variant", "mq_count",
"layers": [...]}`` with one object per layer, keyed by ``kind``.
"""

from __future__ import annotations

import json

import numpy as np

from .circuit import GATE_TYPES, MATRIX_GATES, Circuit, Gate
from .clifford import LayerKind, LayerSpec, MqGate, PauliFrame
from .synth import CompiledCircuit, Variant


class FormatError(ValueError):
    """Input file is not valid JSON or does not follow the schema."""


def _dump_lines(head: dict, key: str, items: list) -> str:
    lines = [json.dumps(head)[:-1] + f', "{key}": [']
    lines.append(",\n".join("  " + json.dumps(item) for item in items))
    lines.append("]}")
    return "\n".join(line for line in lines if line) + "\n"


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FormatError("top level must be a JSON object")
    return doc


def _matrix(value, where: str) -> np.ndarray:
    try:
        m = np.array(value, dtype=np.int64)
    except (TypeError, ValueError):
        raise FormatError(f"{where}: matrix must be an array of 0/1 arrays") from None
    if m.ndim != 2 or not np.isin(m, (0, 1)).all():
        raise FormatError(f"{where}: matrix must be an array of 0/1 arrays")
    return m.astype(np.uint8)


def _vector(value, n: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != n or any(v not in (0, 1) for v in value):
        raise FormatError(f"{where}: expected {n} bits")
    return np.array(value, dtype=np.uint8)


def _qubits(value, where: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(q, int) and not isinstance(q, bool) for q in value):
        raise FormatError(f"{where}: qubits must be a list of integers")
    return value


def _count(doc: dict) -> int:
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError("'n' must be a positive integer")
    return n


# --- circuits ---------------------------------------------------------------


def circuit_to_json(circ: Circuit) -> str:
    items = []
    for g in circ.gates:
        if g.xi is not None:
            items.append({"type": g.type, "xi": g.xi.tolist()})
        else:
            items.append({"type": g.type, "qubits": list(g.qubits)})
    return _dump_lines({"n": circ.n}, "gates", items)


def circuit_from_doc(doc: dict) -> Circuit:
    n = _count(doc)
    gates = doc.get("gates")
    if not isinstance(gates, list):
        raise FormatError("'gates' must be a list")
    out = []
    for i, item in enumerate(gates):
        where = f"gates[{i}]"
        if not isinstance(item, dict):
            raise FormatError(f"{where}: expected an object")
        t = item.get("type")
        if t not in GATE_TYPES:
            raise FormatError(f"{where}: unknown gate type {t!r}")
        try:
            if t in MATRIX_GATES:
                out.append(Gate(t, xi=_matrix(item.get("xi"), where)))
            else:
                out.append(Gate(t, _qubits(item.get("qubits"), where)))
        except FormatError:
            raise
        except ValueError as exc:
            raise FormatError(f"{where}: {exc}") from None
    try:
        return Circuit(n, out)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def circuit_from_json(text: str) -> Circuit:
    return circuit_from_doc(_load(text))


# --- compiled circuits ------------------------------------------------------


def _layer_to_dict(layer: LayerSpec) -> dict:
    kind, p = layer.kind, layer.payload
    d = {"kind": kind.value}
    if kind is LayerKind.PAULI:
        d.update(eta=p.eta.tolist(), mu=p.mu.tolist())
    elif kind in (LayerKind.SZ, LayerKind.SX, LayerKind.HSUBSET):
        d["qubits"] = list(p)
    elif kind in (LayerKind.RZZ, LayerKind.RXX):
        d["xi"] = p.tolist()
    elif kind is LayerKind.CXLAYER:
        d["c"] = p.tolist()
    elif kind is LayerKind.MQ:
        d.update(axis=p.axis.value, xi=p.xi.tolist())
    return d


def _layer_from_dict(item, n: int, where: str) -> LayerSpec:
    if not isinstance(item, dict):
        raise FormatError(f"{where}: expected an object")
    try:
        kind = LayerKind(item.get("kind"))
    except ValueError:
        raise FormatError(f"{where}: unknown layer kind {item.get('kind')!r}") from None
    try:
        if kind is LayerKind.PAULI:
            payload = PauliFrame(_vector(item.get("eta"), n, where), _vector(item.get("mu"), n, where))
        elif kind in (LayerKind.SZ, LayerKind.SX, LayerKind.HSUBSET):
            payload = _qubits(item.get("qubits"), where)
        elif kind in (LayerKind.RZZ, LayerKind.RXX):
            payload = _matrix(item.get("xi"), where)
        elif kind is LayerKind.CXLAYER:
            payload = _matrix(item.get("c"), where)
        elif kind is LayerKind.MQ:
            payload = MqGate(item.get("axis"), _matrix(item.get("xi"), where))
        else:
            payload = None
        return LayerSpec(kind, n, payload)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


def compiled_to_json(circ: CompiledCircuit) -> str:
    head = {"format": "compiled", "n": circ.n, "variant": circ.variant.value, "mq_count": circ.mq_count}
    return _dump_lines(head, "layers", [_layer_to_dict(layer) for layer in circ.layers])


def compiled_from_doc(doc: dict) -> CompiledCircuit:
    n = _count(doc)
    layers = doc.get("layers")
    if not isinstance(layers, list):
        raise FormatError("'layers' must be a list")
    parsed = tuple(_layer_from_dict(item, n, f"layers[{i}]") for i, item in enumerate(layers))
    try:
        variant = Variant(doc.get("variant", "XZ"))
    except ValueError:
        raise FormatError(f"unknown variant {doc.get('variant')!r}") from None
    paulis = [layer.payload for layer in parsed if layer.kind is LayerKind.PAULI]
    frame = paulis[0] if paulis else PauliFrame.zero(n)
    circ = CompiledCircuit(n, parsed, frame, variant)
    if "mq_count" in doc and doc["mq_count"] != circ.mq_count:
        raise FormatError(f"mq_count {doc['mq_count']} does not match {circ.mq_count} MQ layers")
    return circ


def compiled_from_json(text: str) -> CompiledCircuit:
    return compiled_from_doc(_load(text))


def load_any(text: str):
    """Parse either file kind, dispatching on the ``layers``/``gates`` key."""
    doc = _load(text)
    if "layers" in doc:
        return compiled_from_doc(doc)
    return circuit_from_doc(doc)
