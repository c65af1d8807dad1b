"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--size 24]

Prints one line per kernel with the best-of-N time for each backend.
"""

import argparse
import random
import timeit

from spinhiggs import _kernels_py

try:
    from spinhiggs import _ckernels
except ImportError:
    _ckernels = None


def bareiss_case(size, rng):
    rows = [[rng.randint(-50, 50) for _ in range(size)] for _ in range(size)]
    return lambda mod: mod.bareiss_echelon(rows, size)


def koszul_case(ngens, rng, count=2000):
    odd = tuple(rng.randint(0, 1) for _ in range(ngens))
    pairs = []
    for _ in range(count):
        e1 = tuple(rng.randint(0, 1) if o else rng.randint(0, 3) for o in odd)
        e2 = tuple(rng.randint(0, 1) if o else rng.randint(0, 3) for o in odd)
        pairs.append((e1, e2))

    def run(mod):
        mul = mod.koszul_mul
        for e1, e2 in pairs:
            mul(e1, e2, odd)

    return run


def best(fn, mod, repeat):
    return min(timeit.repeat(lambda: fn(mod), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=24)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    cases = {
        f"bareiss_echelon {args.size}x{args.size}": bareiss_case(args.size, rng),
        "koszul_mul x2000 (11 generators)": koszul_case(11, rng),
    }
    print(f"{'kernel':40s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speedup':>8s}")
    for name, fn in cases.items():
        tp = best(fn, _kernels_py, args.repeat) * 1e3
        if _ckernels is None:
            print(f"{name:40s} {tp:12.2f} {'n/a':>12s} {'':>8s}")
            continue
        assert fn(_kernels_py) == fn(_ckernels)
        tc = best(fn, _ckernels, args.repeat) * 1e3
        print(f"{name:40s} {tp:12.2f} {tc:12.2f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
