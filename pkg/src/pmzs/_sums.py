"""Compensated-summation kernels.

All reductions run in strictly ascending index order with Kahan compensation,
so every evaluation is bit-reproducible for a given configuration.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def kahan_sum(a: np.ndarray) -> complex:
    s = 0j
    c = 0j
    for i in range(a.size):
        y = a[i] - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


@njit(cache=True)
def kahan_cumsum_exclusive(a: np.ndarray) -> np.ndarray:
    """out[i] = sum of a[:i], compensated, ascending."""
    out = np.empty_like(a)
    s = 0j
    c = 0j
    for i in range(a.size):
        out[i] = s
        y = a[i] - c
        t = s + y
        c = (t - s) - y
        s = t
    return out


def kahan_cumsum_exclusive_columns(a: np.ndarray) -> np.ndarray:
    """Column-wise exclusive compensated prefix sums of a 2-D array."""
    out = np.empty_like(a)
    for e in range(a.shape[1]):
        out[:, e] = kahan_cumsum_exclusive(np.ascontiguousarray(a[:, e]))
    return out
