#!/usr/bin/env python3
"""Benchmark the modular linear-algebra kernels: compiled extension vs the
numpy fallback.

The kernels dominate the runtime of the verification sweeps (certified
characteristic-polynomial comparisons and stationary solves run one kernel
call per prime, with on the order of a hundred primes for the largest
size-6 state spaces).  Run:

    python benchmarks/bench_kernels.py [--sizes 60,120,240,480] [--end-to-end]
"""

import argparse
import time

import numpy as np

from promlex import _kernels_py

try:
    from promlex import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

from promlex.linalg import get_primes


def chain_like_matrix(size: int, n_labels: int, p: int, seed: int) -> np.ndarray:
    """Sparse column-stochastic-ish integer matrix resembling an evaluated
    transition matrix: a few nonzero entries per column."""
    rng = np.random.default_rng(seed)
    a = np.zeros((size, size), dtype=np.int64)
    for col in range(size):
        rows = rng.choice(size, size=n_labels, replace=True)
        for r in rows:
            a[r, col] += rng.integers(1, 40)
    return a % p


def time_kernel(fn, a, p, repeats=3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(a.copy(), p)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="60,120,240,480")
    ap.add_argument("--end-to-end", action="store_true", help="time verify_spectrum on antichains")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    p = get_primes(1)[0]

    backends = [("numpy", _kernels_py)]
    if _kernels_c is not None:
        backends.append(("compiled", _kernels_c))
    else:
        print("compiled extension not built; timing the numpy fallback only")

    for kernel in ("charpoly_mod", "nullspace_mod"):
        print(f"\n{kernel} (seconds per prime, best of 3)")
        header = f"{'size':>6}" + "".join(f"{name:>12}" for name, _ in backends)
        if len(backends) == 2:
            header += f"{'speedup':>10}"
        print(header)
        for size in sizes:
            a = chain_like_matrix(size, 6, p, seed=size)
            times = [time_kernel(getattr(impl, kernel), a, p) for _, impl in backends]
            row = f"{size:>6}" + "".join(f"{t:>12.4f}" for t in times)
            if len(times) == 2:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)

    if args.end_to_end:
        from promlex.chains import evaluate, transition_matrix
        from promlex.forms import random_weight_vector, stable_rng
        from promlex.linalg import charpoly_equals_product
        from promlex.posets import antichain_poset
        from promlex.spectral import predicted_spectrum

        print("\nend-to-end certified spectrum check (active backend)")
        for n in (4, 5):
            P = antichain_poset(n)
            w = random_weight_vector(n, stable_rng("bench", n))
            pred = predicted_spectrum(P)
            m = evaluate(transition_matrix(P, "promotion"), w)
            t0 = time.perf_counter()
            ok = charpoly_equals_product(m, pred.factors(w))
            print(f"  antichain n={n} ({m.n} states): {time.perf_counter() - t0:.2f}s -> {ok}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
