"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The JIT path is used when numba imports cleanly.  Setting the environment
variable ``TWEETSIGNAL_PURE_NUMPY=1`` before import forces the numpy path;
this is the knob the benchmark suite flips to compare both implementations.
Both paths are exact integer / IEEE-754 computations and must return
identical results; ``tests/test_miner.py`` asserts that.

Kernels:

* ``count_supports`` -- for each candidate itemset bitmask, count the
  transactions (rows of a packed uint64 bitset matrix) containing every
  bit of the mask.  This is the inner loop of the Apriori miner and the
  kernel where the JIT wins big (roughly 30x over the numpy twin).
* ``lagged_products`` -- sum_t x[t+k] * y[t] for k in [-max_lag, max_lag],
  the raw sums behind the cross-correlation function.  Here the numpy twin
  (one BLAS dot per lag) beats the JIT loop on this workload, so the
  dispatcher always picks numpy; the JIT version stays for the benchmark.
"""

import os

import numpy as np

_ENV_FLAG = "TWEETSIGNAL_PURE_NUMPY"
_pure_requested = os.environ.get(_ENV_FLAG, "").strip().lower() in ("1", "true", "yes")

try:
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _pure_requested


def count_supports_numpy(matrix: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """Pure-numpy candidate support counting.

    matrix: (n_transactions, n_words) uint64 packed term bitsets.
    masks:  (n_candidates, n_words) uint64 candidate bitsets.
    Returns int64 counts, one per candidate.
    """
    counts = np.empty(masks.shape[0], dtype=np.int64)
    for i in range(masks.shape[0]):
        mask = masks[i]
        hit = np.bitwise_and(matrix, mask) == mask
        counts[i] = np.count_nonzero(hit.all(axis=1))
    return counts


def lagged_products_numpy(x: np.ndarray, y: np.ndarray, max_lag: int) -> np.ndarray:
    """sum_t x[t+k]*y[t] for k = -max_lag..max_lag (pure numpy)."""
    n = x.shape[0]
    out = np.empty(2 * max_lag + 1, dtype=np.float64)
    for i, k in enumerate(range(-max_lag, max_lag + 1)):
        if k >= 0:
            out[i] = np.dot(x[k:], y[: n - k])
        else:
            out[i] = np.dot(x[: n + k], y[-k:])
    return out


if HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def count_supports_jit(matrix, masks):  # pragma: no cover - jitted
        n, w = matrix.shape
        m = masks.shape[0]
        counts = np.zeros(m, dtype=np.int64)
        for c in prange(m):
            hits = 0
            for r in range(n):
                ok = True
                for j in range(w):
                    bits = masks[c, j]
                    if matrix[r, j] & bits != bits:
                        ok = False
                        break
                if ok:
                    hits += 1
            counts[c] = hits
        return counts

    @njit(cache=True, parallel=True)
    def lagged_products_jit(x, y, max_lag):  # pragma: no cover - jitted
        n = x.shape[0]
        out = np.empty(2 * max_lag + 1, dtype=np.float64)
        # parallel across lags only; each lag's sum stays sequential in t,
        # so results do not depend on the thread schedule
        for i in prange(2 * max_lag + 1):
            k = i - max_lag
            acc = 0.0
            if k >= 0:
                for t in range(n - k):
                    acc += x[t + k] * y[t]
            else:
                for t in range(-k, n):
                    acc += x[t + k] * y[t]
            out[i] = acc
        return out


def count_supports(matrix: np.ndarray, masks: np.ndarray) -> np.ndarray:
    matrix = np.ascontiguousarray(matrix, dtype=np.uint64)
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    if USE_NUMBA:
        return count_supports_jit(matrix, masks)
    return count_supports_numpy(matrix, masks)


def lagged_products(x: np.ndarray, y: np.ndarray, max_lag: int) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    # BLAS-backed dots beat the JIT loop for this access pattern; see module docstring
    return lagged_products_numpy(x, y, max_lag)
