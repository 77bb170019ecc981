"""Sign changes, natural densities over primes, and simultaneous-sign statistics."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .arith import primes_upto
from .forms_data import DataError
from .hecke_core import Eigenform, ZeroPattern, hecke_power
from .satotate import density_closed_form

GRID = 64
# sin((k+1)theta) below this is an exact zero lost to rounding (theta a rational multiple of pi)
SINE_ZERO_TOL = 1e-9


@dataclass(frozen=True)
class SignSequence:
    """Values indexed from 1."""

    values: tuple

    def __init__(self, values: Sequence):
        object.__setattr__(self, "values", tuple(values))

    def __getitem__(self, i: int):
        return self.values[i - 1]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class DensityReport:
    label: str
    predicted: Optional[float]
    empirical: float
    numerator: int
    denominator: int
    tolerance: float
    passed: Optional[bool]

    @classmethod
    def build(cls, label, numerator, denominator, predicted=None, tolerance=0.0) -> "DensityReport":
        if denominator <= 0:
            raise ValueError(f"{label}: empty sample")
        emp = numerator / denominator
        ok = None if predicted is None else abs(emp - predicted) <= tolerance
        return cls(label, predicted, emp, numerator, denominator, tolerance, ok)

    @property
    def deviation(self) -> Optional[float]:
        return None if self.predicted is None else self.empirical - self.predicted

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "DensityReport":
        return cls(d["label"], d["predicted"], d["empirical"], d["numerator"], d["denominator"],
                   d["tolerance"], d["pass"])


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_changes(seq) -> list[tuple[int, int]]:
    """Consecutive nonzero entries (1-based indices) of opposite sign; zeros are skipped."""
    values = seq.values if isinstance(seq, SignSequence) else seq
    out = []
    prev_i, prev_s = None, 0
    for i, v in enumerate(values, start=1):
        s = _sign(v)
        if s == 0:
            continue
        if prev_s and s != prev_s:
            out.append((prev_i, i))
        prev_i, prev_s = i, s
    return out


# --------------------------------------------------------------------------
# the non-vanishing set A_p = {m : C(p^m, f) C(p^m, g) != 0}


@dataclass(frozen=True)
class NonvanishingClass:
    kind: str  # "AllOfN" | "EvenIndices" | "Other"
    density: Fraction
    period: int
    residues: tuple[int, ...]  # m mod period for m in A_p
    moduli: tuple[Optional[int], Optional[int]]

    def contains(self, m: int) -> bool:
        return m >= 1 and m % self.period in self.residues


def classify_nonvanishing_set(pattern_f: ZeroPattern, pattern_g: ZeroPattern) -> NonvanishingClass:
    """Exact form and density of A_p from the two zero patterns at one prime."""
    if pattern_f.site is not None and pattern_g.site is not None and pattern_f.site != pattern_g.site:
        raise ValueError(f"zero patterns belong to different prime sites: {pattern_f.site} vs {pattern_g.site}")
    period = lcm(pattern_f.modulus or 1, pattern_g.modulus or 1)
    residues = tuple(
        r for r in range(period)
        if not pattern_f.vanishes_at(r or period) and not pattern_g.vanishes_at(r or period)
    )
    density = Fraction(len(residues), period)
    if density == 1:
        kind = "AllOfN"
    elif period % 2 == 0 and set(residues) == set(range(0, period, 2)):
        kind = "EvenIndices"
    else:
        kind = "Other"
    return NonvanishingClass(kind, density, period, residues, (pattern_f.modulus, pattern_g.modulus))


# --------------------------------------------------------------------------
# densities over primes


def empirical_prime_density(form: Eigenform, m: int, sign: str, x: int, tolerance: float = 0.02) -> DensityReport:
    """Fraction of prime sites of norm <= x (off the level) with sign C(p^m) as requested."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    predicted = density_closed_form(m, sign)
    sites = [s for s in form.ap_table if s.norm <= x and not form.divides_level(s)]
    if not sites:
        raise DataError(f"{form.label}: no tabulated prime sites of norm <= {x}")
    if all(s.inertia_degree == 1 for s in form.ap_table):
        have = {s.residue_char for s in sites}
        missing = [int(p) for p in primes_upto(x) if form.level_norm % int(p) and int(p) not in have]
        if missing:
            raise DataError(f"{form.label}: a_p missing for {len(missing)} primes <= {x}, first {missing[0]}")
    want = 1 if sign == "+" else -1
    hits = 0
    for s in sites:
        c = hecke_power(form.ap_table[s], form.chi(s), s.norm, form.weight, m)
        if _sign(c.real if isinstance(c, complex) else c) == want:
            hits += 1
    return DensityReport.build(f"{form.label} m={m} sign={sign} x={x}", hits, len(sites), predicted, tolerance)


def simultaneous_density(
    theta_f: float, theta_g: float, n: int, sign: str = "+", independent: bool = False, tolerance: float = 0.01
) -> DensityReport:
    """Fraction of k <= n with sin((k+1)theta_f) sin((k+1)theta_g) of the given sign.

    ``independent`` is the caller's assertion that 1, theta_f/2pi, theta_g/2pi
    are linearly independent over Q; only then is 1/2 predicted.
    """
    for t in (theta_f, theta_g):
        if not 0 < t < math.pi:
            raise ValueError(f"angle {t} not in (0, pi)")
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    k1 = np.arange(2, n + 2, dtype=np.float64)
    sf = np.sin(k1 * theta_f)
    sg = np.sin(k1 * theta_g)
    sf[np.abs(sf) < SINE_ZERO_TOL] = 0.0
    sg[np.abs(sg) < SINE_ZERO_TOL] = 0.0
    prod = sf * sg
    hits = int(np.count_nonzero(prod > 0 if sign == "+" else prod < 0))
    return DensityReport.build(
        f"simultaneous theta=({theta_f:.12g}, {theta_g:.12g}) sign={sign} N={n}",
        hits, n, 0.5 if independent else None, tolerance,
    )


@dataclass(frozen=True)
class Discrepancy:
    value: float
    n: int
    distinct_points: int
    degenerate: bool


def discrepancy_report(alpha: float, beta: float, n: int, grid: int = GRID) -> Discrepancy:
    """Anchored-box discrepancy of ({k alpha}, {k beta}), k = 1..n, on a grid x grid lattice of boxes.

    Boxes are [0, i/grid) x [0, j/grid); the maximum deviation over them is a
    lower bound for the star discrepancy. The sequence is flagged degenerate
    when it revisits points, i.e. the orbit mod 1 is finite.
    """
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    k = np.arange(1, n + 1, dtype=np.float64)
    px = np.mod(k * alpha, 1.0)
    py = np.mod(k * beta, 1.0)
    ix = np.minimum((px * grid).astype(np.int64), grid - 1)
    iy = np.minimum((py * grid).astype(np.int64), grid - 1)
    counts = np.zeros((grid, grid), dtype=np.int64)
    np.add.at(counts, (ix, iy), 1)
    box = counts.cumsum(axis=0).cumsum(axis=1) / n
    edges = np.arange(1, grid + 1) / grid
    area = np.outer(edges, edges)
    value = float(np.max(np.abs(box - area)))
    distinct = len(np.unique(np.round(np.stack([px, py], axis=1) * 1e9).astype(np.int64), axis=0))
    return Discrepancy(value, n, distinct, distinct < n)


def weyl_discrepancy(alpha: float, beta: float, n: int) -> float:
    return discrepancy_report(alpha, beta, n).value
