"""Drive-power cost model (nuclear norm) and the power-law benchmark."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats

from . import gf2
from .synth import CompiledCircuit, cx_four_gate, gaussian_cnot_synthesis

METHODS = ("constant_cost", "gaussian")
DEFAULT_N_VALUES = (8, 16, 32, 64, 128)
DEFAULT_SAMPLES = 20
DEFAULT_SEED = 2025


@dataclass(frozen=True)
class CostReport:
    per_gate: tuple
    total: float


@dataclass(frozen=True)
class FitResult:
    beta: float
    ci_low: float
    ci_high: float
    prefactor: float


def nuclear_norm(xi) -> float:
    """Sum of |eigenvalues| of ``xi`` read as a real symmetric 0/1 matrix."""
    xi = gf2.as_bits(xi, "xi")
    if not gf2.is_symmetric(xi):
        raise ValueError("nuclear norm needs a symmetric matrix")
    a = xi.astype(np.float64)
    lam = np.linalg.eigvalsh(a)
    trace = float(np.trace(a))
    fro2 = float(a.sum())  # entries are 0/1
    if abs(lam.sum() - trace) > 1e-7 * max(1.0, trace) or abs(
        (lam**2).sum() - fro2
    ) > 1e-7 * max(1.0, fro2):
        raise ArithmeticError("eigensolver failed its trace/Frobenius consistency check")
    return float(np.abs(lam).sum())


def circuit_power(circ: CompiledCircuit) -> CostReport:
    per_gate = tuple(nuclear_norm(g.xi) for g in circ.mq_gates)
    return CostReport(per_gate, float(sum(per_gate)))


def power_law_fit(points: Sequence[tuple[float, float]], confidence: float = 0.95) -> FitResult:
    """OLS fit of ``log y = log a + beta log n``; normal-quantile CI on beta."""
    pts = [(float(n), float(y)) for n, y in points]
    if len({n for n, _ in pts}) < 3:
        raise ValueError("power-law fit needs at least 3 distinct n values")
    if any(n <= 0 or y <= 0 for n, y in pts):
        raise ValueError("power-law fit needs positive n and y")
    x = np.log([n for n, _ in pts])
    y = np.log([v for _, v in pts])
    res = stats.linregress(x, y)
    half = float(stats.norm.ppf(0.5 + confidence / 2) * res.stderr)
    beta = float(res.slope)
    return FitResult(beta, beta - half, beta + half, float(math.exp(res.intercept)))


def constant_cost_total(c) -> float:
    dec = cx_four_gate(c)
    return float(sum(nuclear_norm(m) for m in (dec.g, dec.e1, dec.f, dec.e2)))


def gaussian_total(c) -> float:
    _, fused = gaussian_cnot_synthesis(c)
    return float(sum(nuclear_norm(g.xi) for g in fused))


@dataclass(frozen=True)
class BenchConfig:
    n_values: tuple = DEFAULT_N_VALUES
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    exclude_degenerate: bool = True
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if not self.n_values or any(n < 2 for n in self.n_values):
            raise ValueError("n_values must be non-empty with every n >= 2")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class BenchResult:
    rows: list  # (n, method, sample, total) ordered by (n, sample, method)
    fits: dict = field(default_factory=dict)  # method -> FitResult or None
    means: dict = field(default_factory=dict)  # (method, n) -> mean total


def _sample(job):
    seed, n, k = job
    c = gf2.random_invertible(n, np.random.default_rng([seed, n, k]))
    return constant_cost_total(c), gaussian_total(c)


def run_benchmark(cfg: BenchConfig) -> BenchResult:
    """Nuclear-norm totals of both CX-layer realizations on random layers.

    Sample k at size n draws its matrix from the generator seeded with
    ``[seed, n, k]``, so results do not depend on ``threads``.
    """
    jobs = [(cfg.seed, n, k) for n in cfg.n_values for k in range(cfg.samples)]
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            totals = list(pool.map(_sample, jobs, chunksize=4))
    else:
        totals = [_sample(job) for job in jobs]
    rows = []
    per_method = {m: {} for m in METHODS}
    for (_, n, k), pair in zip(jobs, totals):
        # C = I costs nothing for elimination, so it cannot sit on a log-log plot
        degenerate = pair[1] == 0.0
        for method, total in zip(METHODS, pair):
            rows.append((n, method, k, total))
            if not (degenerate and cfg.exclude_degenerate):
                per_method[method].setdefault(n, []).append(total)
    means = {}
    fits = {}
    for method in METHODS:
        points = []
        for n, vals in per_method[method].items():
            means[(method, n)] = float(np.mean(vals))
            points.append((n, means[(method, n)]))
        try:
            fits[method] = power_law_fit(points)
        except ValueError:
            fits[method] = None
    return BenchResult(rows, fits, means)


def write_bench_csv(result: BenchResult, fh) -> None:
    """Data block ``n,method,sample,total_nuc`` then ``method,beta,ci_low,ci_high``."""
    fh.write("n,method,sample,total_nuc\n")
    for n, method, k, total in result.rows:
        fh.write(f"{n},{method},{k},{total!r}\n")
    fh.write("method,beta,ci_low,ci_high\n")
    for method in METHODS:
        fit = result.fits.get(method)
        vals = ("nan",) * 3 if fit is None else (repr(fit.beta), repr(fit.ci_low), repr(fit.ci_high))
        fh.write(f"{method},{','.join(vals)}\n")
