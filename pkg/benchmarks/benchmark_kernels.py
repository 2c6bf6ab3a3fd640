#!/usr/bin/env python3
"""Benchmark the numba JIT kernels against their pure-numpy twins.

The same comparison can be forced package-wide at runtime by setting
``TWEETSIGNAL_PURE_NUMPY=1``, which makes the dispatcher in
``tweetsignal._accel`` pick the numpy path; here both implementations are
called directly so one process times both.

Usage:
    python benchmarks/benchmark_kernels.py [--transactions N] [--terms N]
"""

import argparse
import time

import numpy as np

from tweetsignal import _accel

if not _accel.HAVE_NUMBA:
    raise SystemExit("numba is not installed; nothing to compare")


def _time(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_count_supports(n_transactions: int, n_terms: int, n_candidates: int):
    rng = np.random.default_rng(1)
    n_words = (n_terms + 63) >> 6
    matrix = np.zeros((n_transactions, n_words), dtype=np.uint64)
    for row in range(n_transactions):
        for term in rng.choice(n_terms, size=rng.integers(2, 9), replace=False):
            matrix[row, term >> 6] |= np.uint64(1) << np.uint64(term & 63)

    masks = np.zeros((n_candidates, n_words), dtype=np.uint64)
    for i in range(n_candidates):
        for term in rng.choice(n_terms, size=rng.integers(1, 4), replace=False):
            masks[i, term >> 6] |= np.uint64(1) << np.uint64(term & 63)

    _accel.count_supports_jit(matrix, masks[:2])  # compile outside the clock
    t_np, counts_np = _time(_accel.count_supports_numpy, matrix, masks)
    t_jit, counts_jit = _time(_accel.count_supports_jit, matrix, masks)
    assert np.array_equal(counts_np, counts_jit), "kernel outputs diverge"
    return t_np, t_jit


def bench_lagged_products(n: int, max_lag: int):
    rng = np.random.default_rng(2)
    x = rng.normal(size=n)
    y = rng.normal(size=n)
    _accel.lagged_products_jit(x, y, 2)  # compile outside the clock
    t_np, out_np = _time(_accel.lagged_products_numpy, x, y, max_lag)
    t_jit, out_jit = _time(_accel.lagged_products_jit, x, y, max_lag)
    assert np.allclose(out_np, out_jit, rtol=1e-12, atol=1e-9), "kernel outputs diverge"
    return t_np, t_jit


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--transactions", type=int, default=20_000)
    parser.add_argument("--terms", type=int, default=192)
    parser.add_argument("--candidates", type=int, default=600)
    parser.add_argument("--series-length", type=int, default=200_000)
    parser.add_argument("--max-lag", type=int, default=300)
    args = parser.parse_args()

    rows = []
    t_np, t_jit = bench_count_supports(args.transactions, args.terms, args.candidates)
    rows.append(("count_supports", t_np, t_jit))
    t_np, t_jit = bench_lagged_products(args.series_length, args.max_lag)
    rows.append(("lagged_products", t_np, t_jit))

    print(f"{'kernel':<18} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for name, numpy_s, jit_s in rows:
        print(f"{name:<18} {numpy_s * 1e3:>10.2f}ms {jit_s * 1e3:>10.2f}ms {numpy_s / jit_s:>8.1f}x")


if __name__ == "__main__":
    main()
