"""Time the compiled and pure-Python Ryser kernels on random complex matrices.

    python benchmarks/bench_permanent.py [--max-python 16] [--max-cython 26]
"""
import argparse
import time

import numpy as np

from gptparticles.permanent import AVAILABLE_BACKENDS, permanent


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--min-n", type=int, default=4)
    parser.add_argument("--max-python", type=int, default=16)
    parser.add_argument("--max-cython", type=int, default=26)
    parser.add_argument("--step", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    limits = {"python": args.max_python, "cython": args.max_cython}
    print(f"{'n':>3}  " + "  ".join(f"{b:>12s}" for b in AVAILABLE_BACKENDS) + "     speedup")
    for n in range(args.min_n, max(limits.values()) + 1, args.step):
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        row = {}
        for b in AVAILABLE_BACKENDS:
            if n <= limits[b]:
                repeat = 3 if n < 20 else 1
                row[b] = best_of(lambda: permanent(A, b), repeat)
        cells = "  ".join(f"{row[b]:12.6f}" if b in row else f"{'-':>12s}" for b in AVAILABLE_BACKENDS)
        speedup = f"{row['python'] / row['cython']:10.1f}x" if len(row) == 2 else ""
        print(f"{n:>3}  {cells}  {speedup}")


if __name__ == "__main__":
    main()
