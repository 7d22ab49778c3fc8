"""Compare the numba and numpy backends on the two hot kernels.

Run from the repo root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --census-n 7 --chain-n 20 --steps 100000

The numba timings exclude JIT compilation (one warmup call per kernel).
"""

import argparse
import time

import numpy as np

from edergm import ChainConfig, run_chain, set_backend
from edergm._kernels import census_counts


def time_call(fn, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_census(n: int):
    set_backend("numba")
    census_counts(3)  # compile
    out = {}
    for backend in ("numba", "numpy"):
        set_backend(backend)
        out[backend] = time_call(lambda: census_counts(n))
    return out


def bench_chain(n: int, steps: int):
    cfg = ChainConfig(n=n, theta=(1.0, -1.0), burn_in=1, samples=steps,
                      thinning=1, seed=42)
    set_backend("numba")
    run_chain(ChainConfig(n=n, theta=(1.0, -1.0), burn_in=1, samples=10,
                          thinning=1, seed=42))  # compile
    out = {}
    results = {}
    for backend in ("numba", "numpy"):
        set_backend(backend)
        t0 = time.perf_counter()
        results[backend] = run_chain(cfg)
        out[backend] = time.perf_counter() - t0
    same = np.array_equal(results["numba"].edges, results["numpy"].edges)
    return out, same


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--census-n", type=int, default=6)
    ap.add_argument("--chain-n", type=int, default=15)
    ap.add_argument("--steps", type=int, default=20_000)
    args = ap.parse_args()

    rows = []
    c = bench_census(args.census_n)
    rows.append((f"census n={args.census_n}", c["numba"], c["numpy"]))
    t, same = bench_chain(args.chain_n, args.steps)
    rows.append((f"chain n={args.chain_n} steps={args.steps}", t["numba"], t["numpy"]))

    print(f"{'kernel':<32} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    for name, a, b in rows:
        print(f"{name:<32} {a:>9.4f}s {b:>9.4f}s {b / a:>8.1f}x")
    print(f"\nchain outputs bit-identical across backends: {same}")
    set_backend("numba")


if __name__ == "__main__":
    main()
