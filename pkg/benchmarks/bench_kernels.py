#!/usr/bin/env python3
"""Benchmark the oracle's coprime-counting kernels: numba vs pure numpy.

Usage: python3 benchmarks/bench_kernels.py [limit ...]
"""
import sys
import time

import numpy as np

from totient_ratio.kernels import (
    _build_numba,
    _coprime_count_table_numpy,
)


def bench(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    limits = [int(x) for x in sys.argv[1:]] or [2000, 5000, 10000]
    try:
        _, table_nb = _build_numba()
        table_nb(64)  # trigger compilation outside the timed region
        have_numba = True
    except ImportError:
        have_numba = False
        print("numba not available; benchmarking the numpy path only")

    print(f"{'limit':>8} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}")
    for limit in limits:
        t_np, ref = bench(_coprime_count_table_numpy, limit)
        if have_numba:
            t_nb, got = bench(table_nb, limit)
            assert np.array_equal(ref, got), "kernel outputs disagree"
            print(f"{limit:>8} {t_np:>12.4f} {t_nb:>12.4f} {t_np / t_nb:>8.1f}x")
        else:
            print(f"{limit:>8} {t_np:>12.4f} {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
