"""Coprime-counting kernels for the brute-force oracle.

The oracle recomputes phi from the counting definition (number of r in
1..n with gcd(r, n) = 1), so these inner loops dominate its runtime.  A
numba-jitted path is used when available; setting TOTIENT_RATIO_PURE_NUMPY=1
forces the pure-numpy fallback.  Both paths are importable directly for the
benchmark and for equivalence tests.
"""
from __future__ import annotations

import os

import numpy as np

PURE_NUMPY_ENV = "TOTIENT_RATIO_PURE_NUMPY"


def _coprime_count_numpy(n: int) -> int:
    if n < 1:
        return 0
    vals = np.gcd(np.arange(1, n + 1, dtype=np.int64), np.int64(n))
    return int(np.count_nonzero(vals == 1))


def _coprime_count_table_numpy(limit: int, block: int = 256) -> np.ndarray:
    cols = np.arange(1, limit + 1, dtype=np.int64)
    phi = np.zeros(limit + 1, dtype=np.int64)
    for start in range(1, limit + 1, block):
        ns = np.arange(start, min(start + block, limit + 1), dtype=np.int64)
        g = np.gcd(ns[:, None], cols[None, :])
        hits = (g == 1) & (cols[None, :] <= ns[:, None])
        phi[start : start + len(ns)] = hits.sum(axis=1)
    return phi


def _build_numba():
    from numba import njit

    @njit(cache=True)
    def coprime_count_nb(n):
        if n < 1:
            return 0
        count = 0
        for r in range(1, n + 1):
            x, y = r, n
            while y:
                x, y = y, x % y
            if x == 1:
                count += 1
        return count

    @njit(cache=True)
    def coprime_count_table_nb(limit):
        phi = np.zeros(limit + 1, dtype=np.int64)
        for n in range(1, limit + 1):
            count = 0
            for r in range(1, n + 1):
                x, y = r, n
                while y:
                    x, y = y, x % y
                if x == 1:
                    count += 1
            phi[n] = count
        return phi

    return coprime_count_nb, coprime_count_table_nb


_force_numpy = os.environ.get(PURE_NUMPY_ENV, "") == "1"
if not _force_numpy:
    try:
        _count_nb, _table_nb = _build_numba()
        BACKEND = "numba"
    except ImportError:
        BACKEND = "numpy"
else:
    BACKEND = "numpy"


def active_backend() -> str:
    return BACKEND


def coprime_count(n: int) -> int:
    """phi(n) by counting; n must fit in int64."""
    if BACKEND == "numba":
        return int(_count_nb(n))
    return _coprime_count_numpy(n)


def coprime_count_table(limit: int) -> np.ndarray:
    """phi(0..limit) by counting, phi[0] = 0."""
    if BACKEND == "numba":
        return _table_nb(limit)
    return _coprime_count_table_numpy(limit)
