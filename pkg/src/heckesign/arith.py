"""Small sieves shared by the data and counting modules."""
from __future__ import annotations

import numpy as np


def primes_upto(x: int) -> np.ndarray:
    """All primes p <= x, ascending (Eratosthenes)."""
    if x < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(x + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, int(x**0.5) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p)


def smallest_prime_factor(limit: int) -> np.ndarray:
    """spf[n] for 0 <= n <= limit (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p :: p][spf[p :: p] == 0] = p
    return spf


def sigma_k(k: int, limit: int) -> list[int]:
    """[sigma_k(0)=0, sigma_k(1), ..., sigma_k(limit)] as exact ints."""
    s = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dk = d**k
        for n in range(d, limit + 1, d):
            s[n] += dk
    return s
