#!/usr/bin/env python3
"""Benchmark the compiled census kernels against the pure-numpy fallback.

Runs the full-census and facial-triangle kernels on a few arrangements and
prints a timing table.  The exact Fraction path is included at small n for
scale; it is orders of magnitude slower, which is why the kernels exist.

Usage: python3 scripts/bench_kernels.py [--repeat N]
"""

import argparse
import time

from triarea import census, hexgrid, random_arrangement
from triarea._kernels import HAVE_NUMBA, census_int64, facial_int64
from triarea.census import integer_coefficients


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    args = parser.parse_args()

    cases = [
        ("hexgrid n=30", hexgrid(30)),
        ("hexgrid n=60", hexgrid(60)),
        ("random  n=40", random_arrangement(40, seed=7)),
        ("random  n=80", random_arrangement(80, seed=7)),
    ]
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    if not HAVE_NUMBA:
        print("numba unavailable (or disabled via TRIAREA_NO_NUMBA); numpy only")

    if HAVE_NUMBA:
        # trigger JIT compilation outside the timed region
        warm = integer_coefficients(hexgrid(6))
        census_int64(warm, "numba")
        facial_int64(warm, "numba")

    header = f"{'case':14} {'kernel':8} {'census':>10} {'facial':>10}"
    print(header)
    print("-" * len(header))
    for label, arr in cases:
        coeffs = integer_coefficients(arr)
        assert coeffs is not None
        for backend in backends:
            t_census = best_of(lambda: census_int64(coeffs, backend), args.repeat)
            t_facial = best_of(lambda: facial_int64(coeffs, backend), args.repeat)
            print(f"{label:14} {backend:8} {t_census:9.4f}s {t_facial:9.4f}s")
        if arr.n <= 30:
            t_exact = best_of(lambda: census(arr, backend="exact"), 1)
            print(f"{label:14} {'exact':8} {t_exact:9.4f}s {'-':>10}")
    print()
    print("census = full area census, facial = triangular-face mask")


if __name__ == "__main__":
    main()
