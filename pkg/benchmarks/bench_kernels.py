"""Time the GF(2) kernels on each available backend.

    python3 benchmarks/bench_kernels.py [--sizes 64,128,256] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from mqclifford import _backend, gf2


def _cases(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, (n, n), dtype=np.uint8)
    b = rng.integers(0, 2, (n, n), dtype=np.uint8)
    c = gf2.random_invertible(n, seed)
    return {
        "matmul": lambda: gf2.mul(a, b),
        "inverse": lambda: gf2.inverse(c),
        "rref": lambda: gf2.rref(a),
        "symmetric_pair": lambda: gf2.symmetric_pair_factor(c),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="16,64,128,256")
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = _backend.available()
    print(f"{'kernel':<16}{'n':>6}" + "".join(f"{b + ' ms':>14}" for b in backends) + f"{'speedup':>10}")
    before = _backend.BACKEND
    try:
        for n in sizes:
            cases = _cases(n, n)
            for name, fn in cases.items():
                times = []
                for b in backends:
                    _backend.use(b)
                    fn()  # warm up
                    times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3)
                speed = f"{times[-1] / times[0]:>9.1f}x" if len(times) > 1 else ""
                print(f"{name:<16}{n:>6}" + "".join(f"{t:>14.3f}" for t in times) + speed)
    finally:
        _backend.use(before)


if __name__ == "__main__":
    main()
