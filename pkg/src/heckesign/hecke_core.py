"""Hecke coefficients at prime powers.

Exact three-term recurrence for C(p^r), normalization to the Deligne
interval [-2, 2], Satake roots, eigenvalue angles and the exact
classification of which prime powers carry a vanishing coefficient.

Trivial-character inputs given as Python ints stay exact ints all the way
through; any other numeric input (float, complex, Fraction) is carried by
ordinary Python arithmetic.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional

from sympy import isprime

BOUNDARY_TOL = 1e-12
ANGLE_CLAMP_TOL = 1e-9


class DeligneBoundError(ValueError):
    """A normalized coefficient lies outside [-2, 2] beyond rounding."""


@dataclass(frozen=True, order=True)
class PrimeSite:
    """A prime ideal seen through its residue characteristic and inertia degree."""

    residue_char: int
    inertia_degree: int = 1

    def __post_init__(self):
        if self.inertia_degree < 1:
            raise ValueError(f"inertia degree must be >= 1, got {self.inertia_degree}")
        if not isprime(self.residue_char):
            raise ValueError(f"residue characteristic {self.residue_char} is not prime")

    @property
    def norm(self) -> int:
        return self.residue_char ** self.inertia_degree

    def odd_inertia(self) -> bool:
        return self.inertia_degree % 2 == 1


@dataclass(frozen=True)
class Eigenform:
    """Weight, level, character and the prime-indexed eigenvalue table of a form.

    ``character`` maps a site to a root of unity given as a fraction of a full
    turn, so ``Fraction(1, 4)`` means ``i``. Sites absent from the map carry the
    trivial value 1; sites dividing the level always evaluate to 0.
    """

    weight: int
    level_norm: int
    label: str
    ap_table: Mapping[PrimeSite, int]
    character: Mapping[PrimeSite, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        _check_weight(self.weight)
        if self.level_norm < 1:
            raise ValueError("level norm must be positive")
        for site, ap in self.ap_table.items():
            if not deligne_ok(ap, site.norm, self.weight):
                raise DeligneBoundError(
                    f"{self.label}: a_p={ap} at p={site.residue_char}^{site.inertia_degree} "
                    f"violates a_p^2 <= 4*{site.norm}^{self.weight - 1}"
                )

    def divides_level(self, site: PrimeSite) -> bool:
        return self.level_norm % site.residue_char == 0

    def chi(self, site: PrimeSite):
        if self.divides_level(site):
            return 0
        turn = Fraction(self.character.get(site, 0)) % 1
        if turn == 0:
            return 1
        return cmath.exp(2j * math.pi * turn)

    @property
    def trivial_character(self) -> bool:
        return all(Fraction(t) % 1 == 0 for t in self.character.values())

    def sites(self) -> list[PrimeSite]:
        return sorted(self.ap_table, key=lambda s: (s.norm, s.residue_char))


@dataclass(frozen=True)
class SatakePair:
    alpha: complex
    beta: complex

    @property
    def trace(self) -> complex:
        return self.alpha + self.beta

    @property
    def det(self) -> complex:
        return self.alpha * self.beta


@dataclass(frozen=True)
class ZeroPattern:
    """The set {r >= 1 : C(p^r) = 0}: empty, or r = t-1 (mod t)."""

    kind: str  # "Empty" | "Progression"
    modulus: Optional[int] = None
    site: Optional[PrimeSite] = None

    def __post_init__(self):
        if self.kind not in ("Empty", "Progression"):
            raise ValueError(f"unknown zero-pattern kind {self.kind!r}")
        if (self.kind == "Progression") != (self.modulus is not None):
            raise ValueError("modulus is present exactly for progressions")
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("progression modulus must be >= 2")

    @classmethod
    def empty(cls, site=None):
        return cls("Empty", None, site)

    @classmethod
    def progression(cls, t, site=None):
        return cls("Progression", t, site)

    def vanishes_at(self, r: int) -> bool:
        return self.kind == "Progression" and r >= 1 and r % self.modulus == self.modulus - 1

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "modulus": self.modulus}
        if self.site is not None:
            d["site"] = {"p": self.site.residue_char, "inertia_degree": self.site.inertia_degree}
        return d


def _check_weight(weight: int) -> None:
    if weight < 2 or weight % 2:
        raise ValueError(f"weight must be an even integer >= 2, got {weight}")


def deligne_ok(ap: int, norm: int, weight: int) -> bool:
    """Exact integer form of |a_p| <= 2 norm^((w-1)/2)."""
    return ap * ap <= 4 * norm ** (weight - 1)


def hecke_powers(a_p, chi_p, norm: int, weight: int, r_max: int) -> list:
    """[C(p^0), ..., C(p^r_max)] from the Hecke recurrence."""
    _check_weight(weight)
    if r_max < 0:
        raise ValueError(f"exponent must be non-negative, got {r_max}")
    if chi_p == 1:
        chi_p = 1  # keep integer inputs in exact arithmetic
    d = chi_p * norm ** (weight - 1)
    out = [1, a_p]
    for _ in range(r_max - 1):
        out.append(a_p * out[-1] - d * out[-2])
    return out[: r_max + 1]


def hecke_power(a_p, chi_p, norm: int, weight: int, r: int):
    """C(p^r) via C(p^{m+1}) = C(p)C(p^m) - chi(p) N(p)^{w-1} C(p^{m-1})."""
    if r < 0:
        raise ValueError(f"exponent must be non-negative, got {r}")
    return hecke_powers(a_p, chi_p, norm, weight, r)[r]


def normalized_coeff(c_pr, norm: int, weight: int, r: int) -> float:
    """C(p^r) / N(p)^{r(w-1)/2} as a float.

    Exact integer (or Fraction) inputs are divided exactly before rounding, so
    huge coefficients do not overflow.
    """
    _check_weight(weight)
    e2 = r * (weight - 1)  # twice the exponent
    scaled = c_pr / norm ** (e2 // 2) if isinstance(c_pr, (int, Fraction)) else c_pr / float(norm) ** (e2 // 2)
    if e2 % 2:
        scaled = scaled / math.sqrt(norm)
    if isinstance(scaled, complex):
        return scaled
    return float(scaled)


def angle_of(beta_p: float) -> float:
    """theta in [0, pi] with beta_p = 2 cos(theta)."""
    if abs(beta_p) > 2 + ANGLE_CLAMP_TOL:
        raise DeligneBoundError(f"normalized coefficient {beta_p} outside [-2, 2]")
    return math.acos(min(1.0, max(-1.0, beta_p / 2)))


def chebyshev_value(theta: float, m: int) -> float:
    """sin((m+1)theta) / sin(theta), with the limits at theta = 0 and pi."""
    if abs(theta) <= BOUNDARY_TOL:
        return float(m + 1)
    if abs(theta - math.pi) <= BOUNDARY_TOL:
        return float((-1) ** m * (m + 1))
    return math.sin((m + 1) * theta) / math.sin(theta)


def satake_pair(a_p, chi_p, norm: int, weight: int) -> SatakePair:
    """Roots of X^2 - a_p X + chi_p N^{w-1}; alpha takes the + branch."""
    d = chi_p * norm ** (weight - 1)
    if chi_p == 1 and isinstance(a_p, int):
        disc = a_p * a_p - 4 * norm ** (weight - 1)
        if disc >= 0:
            s = math.isqrt(disc)
            root = complex(s) if s * s == disc else complex(math.sqrt(disc))
        else:
            s = math.isqrt(-disc)
            root = complex(0, s) if s * s == -disc else complex(0, math.sqrt(-disc))
    else:
        root = cmath.sqrt(complex(a_p) ** 2 - 4 * complex(d))
    return SatakePair((a_p + root) / 2, (a_p - root) / 2)


# a_p^2 = c N^{w-1}  ->  zeros at r = t-1 (mod t)
_NIVEN_MODULUS = {0: 2, 1: 3, 2: 4, 3: 6}


def classify_zero_pattern(a_p: int, norm: int, weight: int, site: Optional[PrimeSite] = None) -> ZeroPattern:
    """Exact description of {r >= 1 : C(p^r) = 0} for a trivial-character prime.

    With 4cos^2(theta) = a_p^2 / N^{w-1}, the coefficient vanishes at some
    r >= 1 only when theta is a rational multiple of pi with sin(theta) != 0,
    and rationality of 4cos^2(theta) then leaves c in {0, 1, 2, 3}.
    """
    _check_weight(weight)
    if not isinstance(a_p, int):
        raise TypeError("zero-pattern classification needs an exact integer a_p")
    q = norm ** (weight - 1)
    sq = a_p * a_p
    if sq % q == 0:
        c = sq // q
        if c in _NIVEN_MODULUS:
            return ZeroPattern.progression(_NIVEN_MODULUS[c], site)
    return ZeroPattern.empty(site)
