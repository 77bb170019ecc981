"""Exact eigenform data at desk scale.

q-expansions of Delta (weight 12) and Delta*E4 (weight 16, level 1) in exact
integers, multiplicative expansion from prime eigenvalues, and the CSV
formats used for external eigenvalue tables.

Series products use Kronecker substitution: each truncated series is packed
into one big integer (one fixed-width slot per coefficient), the integers are
multiplied with GMP, and the slots are read back with signed carries.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import gmpy2

from .arith import primes_upto, sigma_k, smallest_prime_factor
from .hecke_core import DeligneBoundError, Eigenform, PrimeSite, deligne_ok, hecke_powers

DEFAULT_MAX_LIMIT = 10**6
CEILING_ENV = "HECKESIGN_MAX_LIMIT"


class DataError(ValueError):
    """Malformed, incomplete or inconsistent eigenform data."""


class ResourceLimitError(ValueError):
    """A requested expansion exceeds the configured coefficient ceiling."""


def max_limit() -> int:
    return int(os.environ.get(CEILING_ENV, DEFAULT_MAX_LIMIT))


def _check_limit(limit: int) -> None:
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit > max_limit():
        raise ResourceLimitError(f"limit {limit} exceeds ceiling {max_limit()} (set {CEILING_ENV} to raise it)")


# --------------------------------------------------------------------------
# Kronecker-substitution series arithmetic


def _slot_bits(a: Sequence[int], b: Sequence[int]) -> int:
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    return (bits + 7) // 8 * 8


def _pack(coeffs: Sequence[int], bits: int) -> int:
    width = bits // 8
    pos = b"".join((c if c > 0 else 0).to_bytes(width, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(width, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(x: int, bits: int, count: int) -> list[int]:
    width = bits // 8
    flip = x < 0
    if flip:
        x = -x
    raw = x.to_bytes(max(width * count, (x.bit_length() + 7) // 8), "little")
    radix = 1 << bits
    half = radix >> 1
    out = []
    carry = 0
    for i in range(count):
        v = int.from_bytes(raw[i * width : (i + 1) * width], "little") + carry
        if v >= half:
            out.append(v - radix)
            carry = 1
        else:
            out.append(v)
            carry = 0
    return [-c for c in out] if flip else out


def series_mul(a: Sequence[int], b: Sequence[int], limit: int) -> list[int]:
    """Coefficients 0..limit of the product of two integer series."""
    a = list(a[: limit + 1])
    b = list(b[: limit + 1])
    if not a or not b:
        return [0] * (limit + 1)
    bits = _slot_bits(a, b)
    prod = gmpy2.mpz(_pack(a, bits)) * gmpy2.mpz(_pack(b, bits))
    n = min(limit + 1, len(a) + len(b) - 1)
    out = _unpack(int(prod), bits, n)
    return out + [0] * (limit + 1 - n)


@dataclass(frozen=True)
class PowerSeries:
    """Integer power series truncated after q^limit."""

    coefficients: tuple[int, ...]
    limit: int

    def __init__(self, coefficients: Sequence[int], limit: Optional[int] = None):
        if limit is None:
            limit = len(coefficients) - 1
        c = list(coefficients[: limit + 1])
        c += [0] * (limit + 1 - len(c))
        object.__setattr__(self, "coefficients", tuple(int(x) for x in c))
        object.__setattr__(self, "limit", limit)

    @classmethod
    def one(cls, limit: int) -> "PowerSeries":
        return cls([1], limit)

    def __getitem__(self, n):
        return self.coefficients[n]

    def __len__(self):
        return self.limit + 1

    def _other(self, other):
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries([other], self.limit)

    def __add__(self, other):
        o = self._other(other)
        lim = min(self.limit, o.limit)
        return PowerSeries([x + y for x, y in zip(self.coefficients, o.coefficients)], lim)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-x for x in self.coefficients], self.limit)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return PowerSeries([other * x for x in self.coefficients], self.limit)
        lim = min(self.limit, other.limit)
        return PowerSeries(series_mul(self.coefficients, other.coefficients, lim), lim)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = PowerSeries.one(self.limit)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by q^k, keeping the same truncation."""
        return PowerSeries([0] * k + list(self.coefficients), self.limit)


def eta_product(limit: int) -> PowerSeries:
    """prod_{n>=1} (1 - q^n) via Euler's pentagonal-number theorem."""
    c = [0] * (limit + 1)
    c[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 <= limit:
        sign = -1 if k % 2 else 1
        for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if g <= limit:
                c[g] = sign
        k += 1
    return PowerSeries(c, limit)


# --------------------------------------------------------------------------
# coefficient tables


@dataclass(frozen=True)
class CoefficientTable:
    """C(n) for 1 <= n <= limit; index 0 holds 0 and is never consulted."""

    coeffs: tuple[int, ...]
    limit: int
    label: str = ""

    def __init__(self, coeffs: Sequence[int], limit: Optional[int] = None, label: str = ""):
        if limit is None:
            limit = len(coeffs) - 1
        if len(coeffs) < limit + 1:
            raise ValueError(f"need {limit + 1} entries (index 0..limit), got {len(coeffs)}")
        c = (0,) + tuple(coeffs[1 : limit + 1])
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "limit", limit)
        object.__setattr__(self, "label", label)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"index {n} outside 1..{self.limit}")
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs[1:])

    def __len__(self):
        return self.limit

    def items(self):
        return ((n, self.coeffs[n]) for n in range(1, self.limit + 1))

    def scaled(self, k: int) -> "CoefficientTable":
        return CoefficientTable([k * c for c in self.coeffs], self.limit, self.label)

    def __neg__(self):
        return CoefficientTable([-c for c in self.coeffs], self.limit, f"-{self.label}")

    def truncated(self, limit: int) -> "CoefficientTable":
        if limit > self.limit:
            raise ValueError(f"cannot extend table of limit {self.limit} to {limit}")
        return CoefficientTable(self.coeffs, limit, self.label)

    def prime_table(self) -> dict[PrimeSite, int]:
        return {PrimeSite(int(p)): self.coeffs[int(p)] for p in primes_upto(self.limit)}


def delta_expansion(limit: int) -> CoefficientTable:
    """tau(n) for n <= limit from q * prod (1 - q^n)^24."""
    _check_limit(limit)
    eta = eta_product(limit - 1)
    eta24 = eta**24
    return CoefficientTable([0] + list(eta24.coefficients), limit, "delta")


def eisenstein_e4(limit: int) -> PowerSeries:
    s3 = sigma_k(3, limit)
    return PowerSeries([1] + [240 * s for s in s3[1:]], limit)


def weight16_expansion(limit: int) -> CoefficientTable:
    """Coefficients of Delta * E4, the normalized level-1 cusp form of weight 16."""
    _check_limit(limit)
    eta24 = eta_product(limit - 1) ** 24
    prod = eta24 * eisenstein_e4(limit - 1)
    return CoefficientTable([0] + list(prod.coefficients), limit, "weight16")


BUILTIN_WEIGHTS = {"delta": 12, "weight16": 16}
_BUILTIN_EXPANSIONS = {"delta": delta_expansion, "weight16": weight16_expansion}


def builtin_table(name: str, limit: int) -> CoefficientTable:
    try:
        return _BUILTIN_EXPANSIONS[name](limit)
    except KeyError:
        raise DataError(f"unknown built-in form {name!r}") from None


def builtin_eigenform(name: str, x: int) -> Eigenform:
    """Level-1 Eigenform with a_p for every prime p <= x."""
    table = builtin_table(name, max(x, 2))
    aps = {site: ap for site, ap in table.prime_table().items() if site.residue_char <= x}
    return Eigenform(BUILTIN_WEIGHTS[name], 1, name, aps)


def _ap_by_prime(ap_table: Mapping) -> dict[int, int]:
    out = {}
    for key, ap in ap_table.items():
        if isinstance(key, PrimeSite):
            if key.inertia_degree != 1:
                continue
            key = key.residue_char
        out[int(key)] = ap
    return out


def expand_multiplicative(
    ap_table: Mapping, weight: int, limit: int, chi: Optional[Mapping[int, int]] = None
) -> CoefficientTable:
    """C(n), n <= limit, from a_p alone: Hecke recurrence at prime powers,
    products across coprime factors.

    ``ap_table`` keys may be rational primes or degree-one PrimeSites.
    ``chi`` maps a prime to its character value (default 1).
    """
    _check_limit(limit)
    aps = _ap_by_prime(ap_table)
    spf = smallest_prime_factor(limit)
    c = [0] * (limit + 1)
    c[1] = 1
    prime_powers: dict[int, list] = {}
    for n in range(2, limit + 1):
        p = int(spf[n])
        m, e = n, 0
        while m % p == 0:
            m //= p
            e += 1
        if p not in prime_powers:
            if p not in aps:
                raise DataError(f"a_p missing for p={p}")
            emax = 0
            q = 1
            while q * p <= limit:
                q *= p
                emax += 1
            chi_p = 1 if chi is None else chi.get(p, 1)
            prime_powers[p] = hecke_powers(aps[p], chi_p, p, weight, emax)
        c[n] = c[m] * prime_powers[p][e]
    return CoefficientTable(c, limit)


# --------------------------------------------------------------------------
# CSV


CSV_HEADER = ["p", "inertia_degree", "ap"]

PathLike = Union[str, Path]


def _parse_int(text: str, lineno: int, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise DataError(f"line {lineno}: cannot parse {what} {text!r}") from None


def load_csv(path: PathLike) -> Eigenform:
    """Read an eigenvalue table with ``# weight=``, ``# level_norm=``, ``# label=`` metadata."""
    path = Path(path)
    meta: dict[str, str] = {}
    rows: list[tuple[int, list[str]]] = []
    header_seen = False
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                body = stripped[1:].strip()
                if "=" in body:
                    k, v = body.split("=", 1)
                    meta[k.strip()] = v.strip()
                continue
            fields = next(csv.reader([stripped]))
            if not header_seen:
                if [f.strip() for f in fields] != CSV_HEADER:
                    raise DataError(f"line {lineno}: expected header {','.join(CSV_HEADER)}, got {stripped!r}")
                header_seen = True
                continue
            rows.append((lineno, fields))
    if not header_seen:
        raise DataError(f"{path}: no header line")
    if "weight" not in meta:
        raise DataError(f"{path}: missing '# weight=' metadata")
    weight = _parse_int(meta["weight"], 0, "weight")
    if weight < 2 or weight % 2:
        raise DataError(f"{path}: weight must be even and >= 2, got {weight}")
    level = _parse_int(meta.get("level_norm", "1"), 0, "level_norm")
    label = meta.get("label", path.stem)

    table: dict[PrimeSite, int] = {}
    for lineno, fields in rows:
        if len(fields) != 3:
            raise DataError(f"line {lineno}: expected 3 fields, got {len(fields)}")
        p = _parse_int(fields[0], lineno, "p")
        f = _parse_int(fields[1], lineno, "inertia_degree")
        ap = _parse_int(fields[2], lineno, "ap")
        try:
            site = PrimeSite(p, f)
        except ValueError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
        if site in table:
            raise DataError(f"line {lineno}: duplicate prime site p={p}, inertia_degree={f}")
        if not deligne_ok(ap, site.norm, weight):
            raise DataError(
                f"line {lineno}: Deligne violation, {ap}^2 > 4*{site.norm}^{weight - 1}"
            )
        table[site] = ap
    try:
        return Eigenform(weight, level, label, table)
    except DeligneBoundError as exc:  # pragma: no cover - rows are checked above
        raise DataError(str(exc)) from None


def eigenform_csv(form: Eigenform) -> str:
    buf = io.StringIO()
    buf.write(f"# weight={form.weight}\n# level_norm={form.level_norm}\n# label={form.label}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for site in form.sites():
        w.writerow([site.residue_char, site.inertia_degree, form.ap_table[site]])
    return buf.getvalue()


def dump_csv(form: Eigenform, path: PathLike) -> None:
    Path(path).write_text(eigenform_csv(form), encoding="utf-8")


def table_csv(table: CoefficientTable, header=("n", "C")) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(table.items())
    return buf.getvalue()


def load_table_csv(path: PathLike) -> CoefficientTable:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        vals = {int(n): int(c) for n, c in reader}
    limit = max(vals, default=0)
    if sorted(vals) != list(range(1, limit + 1)):
        raise DataError(f"{path}: table indices are not 1..{limit}")
    return CoefficientTable([0] + [vals[n] for n in range(1, limit + 1)], limit)
