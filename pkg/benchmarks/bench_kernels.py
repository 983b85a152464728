"""Compiled versus pure-Python Bareiss kernel.

Run with ``python benchmarks/bench_kernels.py``.  Matrices are derivation
systems of random algebras (the hot path of every invariant) plus dense
random integer matrices.
"""

import argparse
import random
import time

from cdalg import _kernels_py
from cdalg.algebra import Algebra
from cdalg.invariants import derivation_system
from cdalg.linalg import _int_rows

try:
    from cdalg import _kernels
except ImportError:
    _kernels = None


def random_algebra_rows(rng, n, density=0.3):
    c = [[[rng.randint(-3, 3) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)] for _ in range(n)]
    return _int_rows(derivation_system(Algebra("R", n, (), c)))


def dense_rows(rng, m, n):
    return [[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)]


def timeit(fn, cases, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for rows in cases:
            fn(rows)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    workloads = {
        "derivation system n=4": [random_algebra_rows(rng, 4) for _ in range(20)],
        "derivation system n=5": [random_algebra_rows(rng, 5) for _ in range(5)],
        "dense 40x40": [dense_rows(rng, 40, 40) for _ in range(5)],
    }
    print(f"{'workload':<24}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, cases in workloads.items():
        py = timeit(_kernels_py.rank, cases, args.repeat)
        if _kernels is None:
            print(f"{name:<24}{py:>12.4f}{'n/a':>12}{'':>10}")
            continue
        for rows in cases:
            assert _kernels.echelon(rows) == _kernels_py.echelon(rows)
        cy = timeit(_kernels.rank, cases, args.repeat)
        print(f"{name:<24}{py:>12.4f}{cy:>12.4f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
