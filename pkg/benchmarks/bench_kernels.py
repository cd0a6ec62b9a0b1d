#!/usr/bin/env python3
"""Compare the numba and numpy paths of the modular kernels.

Usage: python3 benchmarks/bench_kernels.py [--size N] [--repeat R]
"""
import argparse
import time

import numpy as np

from qtwo import kernels
from qtwo._accel import HAVE_NUMBA


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0x5EED)
    a = rng.integers(0, 3, size=(args.size, args.size + 17), dtype=np.int64)
    x = rng.integers(0, 3, size=729, dtype=np.int64)
    y = rng.integers(0, 3, size=729, dtype=np.int64)

    paths = [False, True] if HAVE_NUMBA else [False]
    if HAVE_NUMBA:
        kernels.rank_mod_p(a[:4, :4], 3, use_numba=True)        # compile
        kernels.cyclic_mul(x[:9], y[:9], 3, use_numba=True)
    results = {}
    for use in paths:
        tag = "numba" if use else "numpy"
        r = best_of(lambda: kernels.rank_mod_p(a, 3, use_numba=use), args.repeat)
        c = best_of(lambda: kernels.cyclic_mul(x, y, 3, use_numba=use), args.repeat)
        results[tag] = (r, c)
        print(f"{tag:<6} rref {args.size}x{args.size + 17} mod 3: {r * 1e3:8.2f} ms   "
              f"cyclic_mul Z/729: {c * 1e3:8.2f} ms")
    if len(results) == 2:
        assert kernels.rank_mod_p(a, 3, use_numba=True) == kernels.rank_mod_p(a, 3, use_numba=False)
        assert np.array_equal(kernels.cyclic_mul(x, y, 3, use_numba=True),
                              kernels.cyclic_mul(x, y, 3, use_numba=False))
        (rn, cn), (rj, cj) = results["numpy"], results["numba"]
        print(f"speedup: rref x{rn / rj:.1f}, cyclic_mul x{cn / cj:.1f}")
    else:
        print("numba unavailable or disabled (QTWO_NO_NUMBA); numpy path only")


if __name__ == "__main__":
    main()
