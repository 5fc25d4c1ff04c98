"""Command-line interface: ``mqclifford compile|verify|bench|gen``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
3 internal error (a compiled circuit failed its own verification).
"""

from __future__ import annotations

import argparse
import io
import sys

from . import cost, gf2
from .circuit import cx_circuit, random_clifford_circuit
from .fileio import FormatError, circuit_from_json, circuit_to_json, compiled_to_json, load_any
from .synth import Variant, compile_clifford, gaussian_cnot_synthesis
from .verify import DENSE_MAX_QUBITS, tableau_of_circuit, verify_compilation

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_compile(args) -> int:
    try:
        circ = circuit_from_json(_read(args.input))
    except FormatError as exc:
        raise UsageError(f"{args.input}: parse error: {exc}") from None
    target = tableau_of_circuit(circ)
    compiled = compile_clifford(target, args.variant)
    report = verify_compilation(target, compiled)
    if not report.ok:
        print(f"internal error: compiled circuit failed verification\n{report}", file=sys.stderr)
        return EXIT_INTERNAL
    _write(args.output, compiled_to_json(compiled))
    power = cost.circuit_power(compiled)
    print(f"mq_count: {compiled.mq_count}")
    for gate, nuc in zip(compiled.mq_gates, power.per_gate):
        print(f"  MQ{gate.axis.value} nuc={nuc:.6f}")
    print(f"total_nuc: {power.total:.6f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        target = load_any(_read(args.target))
        candidate = load_any(_read(args.candidate))
    except FormatError as exc:
        raise UsageError(f"parse error: {exc}") from None
    if target.n != candidate.n:
        raise UsageError(f"qubit count mismatch: {target.n} vs {candidate.n}")
    if args.dense and target.n > DENSE_MAX_QUBITS:
        raise UsageError(f"--dense supports n <= {DENSE_MAX_QUBITS}, got n={target.n}")
    report = verify_compilation(tableau_of_circuit(target), candidate, dense=args.dense)
    print(report)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def cmd_bench(args) -> int:
    try:
        cfg = cost.BenchConfig(
            n_values=args.n,
            samples=args.samples,
            seed=args.seed,
            exclude_degenerate=not args.include_degenerate,
            threads=args.threads,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = cost.run_benchmark(cfg)
    buf = io.StringIO()
    cost.write_bench_csv(result, buf)
    _write(args.output, buf.getvalue())
    if args.output != "-":
        for method in cost.METHODS:
            fit = result.fits[method]
            if fit is None:
                print(f"{method}: fit needs at least 3 distinct n values")
            else:
                print(f"{method}: beta={fit.beta:.4f} [{fit.ci_low:.4f}, {fit.ci_high:.4f}]")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    if args.kind == "cx":
        c = gf2.random_invertible(args.n, args.seed)
        cnots, _ = gaussian_cnot_synthesis(c)
        circ = cx_circuit(cnots, args.n)
    else:
        circ = random_clifford_circuit(args.n, args.seed)
    _write(args.output, circuit_to_json(circ))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mqclifford", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compile", help="compile a Clifford circuit file")
    c.add_argument("input")
    c.add_argument("-o", "--output", default="-")
    c.add_argument("--variant", choices=[v.value for v in Variant], default="XZ")
    c.set_defaults(func=cmd_compile)

    v = sub.add_parser("verify", help="check that a candidate realizes a target")
    v.add_argument("target")
    v.add_argument("candidate")
    v.add_argument("--dense", action="store_true", help="also compare dense unitaries (n <= 5)")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="nuclear-norm benchmark on random CX layers")
    b.add_argument("--n", type=_int_list, default=list(cost.DEFAULT_N_VALUES))
    b.add_argument("--samples", type=int, default=cost.DEFAULT_SAMPLES)
    b.add_argument("--seed", type=int, default=cost.DEFAULT_SEED)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--include-degenerate", action="store_true")
    b.add_argument("-o", "--output", default="-")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", help="write a random circuit file")
    g.add_argument("kind", choices=["cx", "clifford"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
