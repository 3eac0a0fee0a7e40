"""
Leave-one-out max-plus scans over the neighbors of one vertex.

Every function takes tables with one row per neighbor and one column per depth
slot, and returns, for each row j, the best combination over the other rows.
Prefix and suffix states are combined, so nothing is ever subtracted and the
-inf sentinel stays exact.
"""
from typing import Tuple

import numpy as np

from ..models.fields import NEG_INF, sat_add


def _neg(shape) -> np.ndarray:
    return np.full(shape, NEG_INF)


def loo_sum(b: np.ndarray) -> np.ndarray:
    """out[j] = sum over k != j of b[k]."""
    n = b.shape[0]
    prefix = np.zeros((n + 1,) + b.shape[1:])
    suffix = np.zeros((n + 1,) + b.shape[1:])
    for k in range(n):
        prefix[k + 1] = sat_add(prefix[k], b[k])
        suffix[n - k - 1] = sat_add(suffix[n - k], b[n - k - 1])
    return sat_add(prefix[:n], suffix[1:])


def _scan_one(a: np.ndarray, b: np.ndarray, order) -> Tuple[np.ndarray, np.ndarray]:
    """States (sum of b, best single a-choice) accumulated over rows in `order`."""
    shape = (a.shape[0] + 1,) + a.shape[1:]
    s0 = np.zeros(shape)
    s1 = _neg(shape)
    for step, k in enumerate(order):
        s0[step + 1] = sat_add(s0[step], b[k])
        s1[step + 1] = np.maximum(sat_add(s1[step], b[k]), sat_add(s0[step], a[k]))
    return s0, s1


def loo_one(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """out[j] = max over k != j of (a[k] + sum over l not in {k, j} of b[l])."""
    n = a.shape[0]
    p0, p1 = _scan_one(a, b, range(n))
    s0, s1 = _scan_one(a, b, range(n - 1, -1, -1))
    # suffix state for row j covers rows j+1..n-1, i.e. n-1-j reversed steps
    back = np.arange(n - 1, -1, -1)
    return np.maximum(sat_add(p1[:n], s0[back]), sat_add(p0[:n], s1[back]))


def full_one(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """max over k of (a[k] + sum over l != k of b[l])."""
    _, s1 = _scan_one(a, b, range(a.shape[0]))
    return s1[-1]


def _scan_two(a1: np.ndarray, a2: np.ndarray, b: np.ndarray, order):
    shape = (a1.shape[0] + 1,) + a1.shape[1:]
    s0 = np.zeros(shape)
    s1a, s1b, s2 = _neg(shape), _neg(shape), _neg(shape)
    for step, k in enumerate(order):
        s0[step + 1] = sat_add(s0[step], b[k])
        s1a[step + 1] = np.maximum(sat_add(s1a[step], b[k]), sat_add(s0[step], a1[k]))
        s1b[step + 1] = np.maximum(sat_add(s1b[step], b[k]), sat_add(s0[step], a2[k]))
        s2[step + 1] = np.maximum.reduce([
            sat_add(s2[step], b[k]),
            sat_add(s1a[step], a2[k]),
            sat_add(s1b[step], a1[k]),
        ])
    return s0, s1a, s1b, s2


def loo_two(a1: np.ndarray, a2: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    out[j] = max over distinct k, l (both != j) of
    a1[k] + a2[l] + sum over m not in {k, l, j} of b[m].
    """
    n = a1.shape[0]
    p0, p1a, p1b, p2 = _scan_two(a1, a2, b, range(n))
    s0, s1a, s1b, s2 = _scan_two(a1, a2, b, range(n - 1, -1, -1))
    back = np.arange(n - 1, -1, -1)
    return np.maximum.reduce([
        sat_add(p2[:n], s0[back]),
        sat_add(p0[:n], s2[back]),
        sat_add(p1a[:n], s1b[back]),
        sat_add(p1b[:n], s1a[back]),
    ])


def full_two(a1: np.ndarray, a2: np.ndarray, b: np.ndarray) -> np.ndarray:
    *_, s2 = _scan_two(a1, a2, b, range(a1.shape[0]))
    return s2[-1]
