"""Benchmark the compiled kernels against the pure-numpy fallback.

Run from the repository root after installing the package:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from infoproc import kernels
from infoproc.kernels import _pure

try:
    from infoproc.kernels import _speedups
except ImportError:
    _speedups = None


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_step_states(backend, n_cells=16, rule=110):
    states = np.arange(1 << n_cells, dtype=np.uint64)
    return timeit(backend.step_states, states, rule, n_cells)[0]

def bench_basin_masses(backend, n_cells=14, rule=110):
    return timeit(backend.basin_masses, rule, n_cells)[0]


def bench_best_subset(backend, d=16, n=3, seed=0):
    rng = np.random.default_rng(seed)
    codes = rng.integers(0, 6, size=(d, 256)).astype(np.int64)
    classes = rng.integers(0, 4, size=256).astype(np.int64)
    return timeit(backend.best_subset, codes, classes, n)[0]


def main():
    print(f"active backend: {kernels.IMPLEMENTATION}")
    if _speedups is None:
        print("compiled extension not available; benchmarking pure only")
    cases = [
        ("step_states (2^16 states)", bench_step_states),
        ("basin_masses (N=14 ring)", bench_basin_masses),
        ("best_subset (16 choose 3, 256 rows)", bench_best_subset),
    ]
    header = f"{'kernel':<38}{'pure':>10}{'compiled':>10}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, bench in cases:
        t_pure = bench(_pure)
        if _speedups is not None:
            t_fast = bench(_speedups)
            print(f"{name:<38}{t_pure:>9.4f}s{t_fast:>9.4f}s{t_pure / t_fast:>8.1f}x")
        else:
            print(f"{name:<38}{t_pure:>9.4f}s{'-':>10}{'-':>9}")


if __name__ == "__main__":
    main()
