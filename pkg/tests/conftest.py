import itertools

import numpy as np
import pytest

from mqclifford import _backend

BACKENDS = _backend.available()


@pytest.fixture(params=BACKENDS)
def backend(request):
    """Run a test once per available GF(2) kernel implementation."""
    previous = _backend.BACKEND
    _backend.use(request.param)
    yield request.param
    _backend.use(previous)


def naive_matmul(a, b):
    n, m = a.shape
    p = b.shape[1]
    out = np.zeros((n, p), dtype=np.uint8)
    for i in range(n):
        for j in range(p):
            acc = 0
            for k in range(m):
                acc ^= int(a[i, k]) & int(b[k, j])
            out[i, j] = acc
    return out


def span_size(a):
    """Number of distinct F2 combinations of the rows of ``a``."""
    rows = [int("".join(map(str, r)), 2) for r in a.tolist()]
    seen = {0}
    for r in rows:
        seen |= {s ^ r for s in seen}
    return len(seen)


def all_matrices(n, m=None):
    m = n if m is None else m
    for bits in itertools.product((0, 1), repeat=n * m):
        yield np.array(bits, dtype=np.uint8).reshape(n, m)


def all_symmetric(n):
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    for bits in itertools.product((0, 1), repeat=len(idx)):
        s = np.zeros((n, n), dtype=np.uint8)
        for (i, j), b in zip(idx, bits):
            s[i, j] = s[j, i] = b
        yield s


def is_invertible_brute(a):
    return span_size(a) == 2 ** a.shape[0]


_RESULTS = []


def record(criterion, passed, detail):
    _RESULTS.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")


def random_clifford(n, seed):
    """Target tableau from a random H/S/CX word (independent of the compiler)."""
    from mqclifford.circuit import random_clifford_circuit
    from mqclifford.verify import tableau_of_circuit

    return tableau_of_circuit(random_clifford_circuit(n, seed))
