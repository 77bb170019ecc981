"""Coefficient-shift operators, the q-sieve, and Rankin-Selberg coefficient products.

Everything works on degree-one data, where an integral ideal is a positive
integer n and N(n) = n. The two-level sum in ``rankin_coefficients`` keeps
its general shape: a caller with higher-degree data passes the per-norm
ideal counts and per-norm coefficient-product sums explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional, Sequence

from .forms_data import CoefficientTable


class TableLengthError(ValueError):
    """The base table is too short for the requested operation."""


def _check_q(q: int) -> None:
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")


def op_shift(table: CoefficientTable, q: int, limit: Optional[int] = None) -> CoefficientTable:
    """f -> f|q: C(n) = base C(n/q) when q | n, else 0.

    The default output limit q * table.limit is the largest one fully
    determined by the base table.
    """
    _check_q(q)
    if limit is None:
        limit = q * table.limit
    if limit > q * table.limit:
        raise TableLengthError(f"shift by {q} determines coefficients only up to {q * table.limit}")
    c = [0] * (limit + 1)
    for m in range(1, limit // q + 1):
        c[m * q] = table.coeffs[m]
    return CoefficientTable(c, limit, f"{table.label}|{q}")


def op_U(table: CoefficientTable, q: int, limit: Optional[int] = None) -> CoefficientTable:
    """f -> f|U(q): C(n) = base C(q n)."""
    _check_q(q)
    if limit is None:
        limit = table.limit // q
    if q * limit > table.limit:
        raise TableLengthError(f"U({q}) up to {limit} needs base coefficients up to {q * limit}, have {table.limit}")
    c = [0] + [table.coeffs[q * n] for n in range(1, limit + 1)]
    return CoefficientTable(c, limit, f"{table.label}|U({q})")


@dataclass(frozen=True)
class SievedForm:
    """g = f - (f|U(q))|q, with coefficients on the base table's range."""

    base: CoefficientTable
    q: int
    table: CoefficientTable

    def __getitem__(self, n):
        return self.table[n]

    def violations(self) -> list[tuple[str, int]]:
        """Indices where either sieve identity fails (empty for a valid form).

        For q = 1 every n is a multiple of q, so only the vanishing clause applies.
        """
        bad = []
        for n in range(1, self.table.limit + 1):
            if n % self.q == 0:
                if self.table.coeffs[n] != 0:
                    bad.append(("multiple", n))
            elif gcd(n, self.q) == 1 and self.table.coeffs[n] != self.base.coeffs[n]:
                bad.append(("coprime", n))
        return bad


def sieve_construct(table: CoefficientTable, q: int) -> SievedForm:
    """Kill C(n) at multiples of q, keep it at n coprime to q; checked on construction."""
    _check_q(q)
    back = op_shift(op_U(table, q), q, limit=None)
    c = [0] * (table.limit + 1)
    for n in range(1, table.limit + 1):
        c[n] = table.coeffs[n] - (back.coeffs[n] if n <= back.limit else 0)
    form = SievedForm(table, q, CoefficientTable(c, table.limit, f"sieve({table.label},{q})"))
    bad = form.violations()
    if bad:  # pragma: no cover - holds by construction
        raise AssertionError(f"sieve identities fail at {bad[:5]}")
    return form


def restricted_zeta_coeffs(c1: int, limit: int, ideal_counts: Optional[Sequence[int]] = None) -> list[int]:
    """a_n(c1) for 0 <= n <= limit (a_0 = 0): ideals of norm n coprime to c1.

    Degree one: the single ideal (n) counts iff gcd(n, c1) = 1. A supplied
    ``ideal_counts[n]`` (ideals of norm n) replaces the 1 for higher degree.
    """
    if c1 < 1:
        raise ValueError(f"c1 must be >= 1, got {c1}")
    out = [0] * (limit + 1)
    for n in range(1, limit + 1):
        if gcd(n, c1) == 1:
            out[n] = 1 if ideal_counts is None else ideal_counts[n]
    return out


def rankin_coefficients(
    f: CoefficientTable,
    g: CoefficientTable,
    n_coprime_to: int,
    c1: int,
    k0: int,
    l0: int,
    limit: int,
    fiber_sum: Optional[Callable[[int], int]] = None,
) -> list[int]:
    """b_m, 1 <= m <= limit, as a list indexed by m (b_0 = 0).

    b_m = sum over n^2 | m of a_n(c1) n^(k0+l0-2) S(m/n^2), where S(k) sums
    C(m', f) C(m', g) over ideals m' of norm k coprime to ``n_coprime_to``.
    In degree one S(k) has the single term m' = k; ``fiber_sum`` overrides it.
    """
    if limit > min(f.limit, g.limit):
        raise TableLengthError(f"tables cover {min(f.limit, g.limit)} coefficients, need {limit}")
    if fiber_sum is None:
        def fiber_sum(k):
            if gcd(k, n_coprime_to) != 1:
                return 0
            return f.coeffs[k] * g.coeffs[k]
    a = restricted_zeta_coeffs(c1, limit)
    e = k0 + l0 - 2
    inner = [0] + [fiber_sum(k) for k in range(1, limit + 1)]
    b = [0] * (limit + 1)
    n = 1
    while n * n <= limit:
        if a[n]:
            w = a[n] * n**e
            for k in range(1, limit // (n * n) + 1):
                if inner[k]:
                    b[k * n * n] += w * inner[k]
        n += 1
    return b


def find_simultaneous_sign_changes(
    f: CoefficientTable, g: CoefficientTable, limit: int
) -> tuple[Optional[int], Optional[int]]:
    """(first n with C(n,f)C(n,g) > 0, first n with it < 0); None when absent up to limit."""
    limit = min(limit, f.limit, g.limit)
    first_pos = first_neg = None
    for n in range(1, limit + 1):
        p = f.coeffs[n] * g.coeffs[n]
        if p > 0 and first_pos is None:
            first_pos = n
        elif p < 0 and first_neg is None:
            first_neg = n
        if first_pos is not None and first_neg is not None:
            break
    return first_pos, first_neg
