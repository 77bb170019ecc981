"""The Sato-Tate measure (2/pi) sin^2(t) dt on [0, pi].

Interval measure in closed form, inverse-CDF sampling, the regions where
sin((m+1)t) has a fixed sign, and the closed-form sign densities those
regions carry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

BISECT_TOL = 1e-12
BISECT_MAX_ITER = 80


@dataclass(frozen=True, order=True)
class STInterval:
    """Half-open [lo, hi) inside [0, pi]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= math.pi):
            raise ValueError(f"need 0 <= lo <= hi <= pi, got [{self.lo}, {self.hi})")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, theta) -> bool:
        return self.lo <= theta < self.hi


@dataclass(frozen=True)
class IntervalUnion:
    intervals: tuple[STInterval, ...]

    def __init__(self, intervals: Iterable[STInterval]):
        ivs = tuple(sorted(intervals))
        for a, b in zip(ivs, ivs[1:]):
            if b.lo < a.hi:
                raise ValueError(f"intervals overlap: {a} and {b}")
        object.__setattr__(self, "intervals", ivs)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    @property
    def length(self) -> float:
        return sum(iv.length for iv in self.intervals)

    def contains(self, theta) -> bool:
        return any(iv.contains(theta) for iv in self.intervals)


def st_cdf(theta):
    """F(t) = t/pi - sin(2t)/(2pi); works elementwise on arrays."""
    return theta / np.pi - np.sin(2 * theta) / (2 * np.pi)


def st_measure(region) -> float:
    """mu_ST of an STInterval or an IntervalUnion."""
    if isinstance(region, IntervalUnion):
        return math.fsum(st_measure(iv) for iv in region)
    lo, hi = region.lo, region.hi
    return (hi - lo) / math.pi - (math.sin(2 * hi) - math.sin(2 * lo)) / (2 * math.pi)


def st_inverse_cdf(u) -> np.ndarray:
    """Vectorized bisection for F(t) = u on [0, pi]."""
    u = np.asarray(u, dtype=float)
    lo = np.zeros_like(u)
    hi = np.full_like(u, math.pi)
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        below = st_cdf(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.max(hi - lo, initial=0.0) < BISECT_TOL:
            break
    return 0.5 * (lo + hi)


def st_sample(seed: int, n: int, start: int = 0) -> np.ndarray:
    """n Sato-Tate angles; draw i depends only on (seed, start + i).

    Shards ``st_sample(s, k, 0)`` and ``st_sample(s, n - k, k)`` concatenate to
    ``st_sample(s, n)``.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    bitgen = np.random.PCG64(seed)
    if start:
        bitgen.advance(start)
    u = np.random.Generator(bitgen).random(n)
    return st_inverse_cdf(u)


def _check_sign(sign: str) -> str:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return sign


def sign_region(m: int, sign: str) -> IntervalUnion:
    """Maximal subintervals of (0, pi) where sin((m+1)t) has the given sign."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    _check_sign(sign)
    k = m + 1
    step = math.pi / k
    # sin(k t) > 0 on (2j step, (2j+1) step), < 0 on ((2j-1) step, 2j step)
    if sign == "+":
        ends = [(2 * j, 2 * j + 1) for j in range(0, (k - 1) // 2 + 1)]
    else:
        ends = [(2 * j - 1, 2 * j) for j in range(1, k // 2 + 1)]
    return IntervalUnion(
        STInterval(a * step, min(b * step, math.pi) if b < k else math.pi) for a, b in ends
    )


def density_closed_form(m: int, sign: str) -> float:
    """Natural density of primes with C(p^m) of the given sign."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    _check_sign(sign)
    if m % 2:
        return 0.5
    t = math.tan(math.pi / (m + 1)) / (2 * math.pi)
    if sign == "+":
        return (m + 2) / (2 * (m + 1)) - t
    return m / (2 * (m + 1)) + t


def sign_frequencies(thetas: np.ndarray, m: int) -> tuple[int, int]:
    """(#positive, #negative) of sin((m+1)t) over the given angles."""
    s = np.sin((m + 1) * np.asarray(thetas))
    return int(np.count_nonzero(s > 0)), int(np.count_nonzero(s < 0))
