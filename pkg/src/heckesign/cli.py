"""Command-line experiments.

    heckesign tau --limit N [--out PATH]
    heckesign density --m M [--x X] [--form delta|weight16|PATH] [--sign +|-] [--tol T]
    heckesign zeros --ap A --norm Q --weight W
    heckesign oscillate [--limit L] [--sieve-q Q]
    heckesign simulate --m M [--samples S] [--seed K]

Exit codes: 0 pass, 1 outside tolerance, 2 usage error, 3 data or I/O error.
JSON goes to stdout, pretty-printed with sorted keys.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import forms_data, oscillation, satotate
from .forms_data import BUILTIN_WEIGHTS, DataError, ResourceLimitError, max_limit
from .hecke_core import classify_zero_pattern
from .sign_analysis import DensityReport, empirical_prime_density

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3
DEFAULT_SEED = 20240601
DEFAULT_DENSITY_TOL = 0.02


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    limit: Optional[int] = None
    x: Optional[int] = None
    m: Optional[int] = None
    samples: Optional[int] = None
    seed: int = DEFAULT_SEED
    form: str = "delta"
    sign: str = "+"
    out: Optional[Path] = None
    tolerance: Optional[float] = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        ceiling = max_limit()
        for name in ("limit", "x", "samples"):
            v = getattr(self, name)
            if v is None:
                continue
            if v < 1:
                raise UsageError(f"--{name} must be >= 1, got {v}")
            if v > ceiling:
                raise UsageError(f"--{name} {v} exceeds ceiling {ceiling} (env {forms_data.CEILING_ENV})")
        if self.m is not None and self.m < 1:
            raise UsageError(f"--m must be >= 1, got {self.m}")
        if self.tolerance is not None and not self.tolerance >= 0:
            raise UsageError(f"--tol must be non-negative, got {self.tolerance}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def cmd_tau(cfg: RunConfig, stdout) -> int:
    table = forms_data.delta_expansion(cfg.limit)
    text = forms_data.table_csv(table)
    digest = hashlib.sha256(text.encode()).hexdigest()
    if cfg.out is None:
        stdout.write(text)
        print(f"sha256 {digest}", file=sys.stderr)
    else:
        cfg.out.write_text(text, encoding="utf-8")
        print(f"wrote {cfg.limit} coefficients to {cfg.out} sha256 {digest}", file=stdout)
    return EXIT_PASS


def _load_form(name: str, x: int):
    if name in BUILTIN_WEIGHTS:
        return forms_data.builtin_eigenform(name, x)
    return forms_data.load_csv(name)


def cmd_density(cfg: RunConfig, stdout) -> int:
    form = _load_form(cfg.form, cfg.x)
    tol = DEFAULT_DENSITY_TOL if cfg.tolerance is None else cfg.tolerance
    report = empirical_prime_density(form, cfg.m, cfg.sign, cfg.x, tol)
    print(report.to_json(), file=stdout)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_zeros(cfg: RunConfig, stdout) -> int:
    e = cfg.extra
    if e["norm"] < 2:
        raise UsageError("--norm must be a prime power >= 2")
    if e["weight"] < 2 or e["weight"] % 2:
        raise UsageError("--weight must be even and >= 2")
    pattern = classify_zero_pattern(e["ap"], e["norm"], e["weight"])
    print(_dump(pattern.to_dict()), file=stdout)
    return EXIT_PASS


def cmd_oscillate(cfg: RunConfig, stdout) -> int:
    q = cfg.extra.get("sieve_q", 1)
    if q < 1:
        raise UsageError("--sieve-q must be >= 1")
    f = forms_data.delta_expansion(cfg.limit)
    g = forms_data.weight16_expansion(cfg.limit)
    if q > 1:
        f = oscillation.sieve_construct(f, q).table
        g = oscillation.sieve_construct(g, q).table
    k0, l0 = BUILTIN_WEIGHTS["delta"], BUILTIN_WEIGHTS["weight16"]
    first_pos, first_neg = oscillation.find_simultaneous_sign_changes(f, g, cfg.limit)
    b = oscillation.rankin_coefficients(f, g, q, q * q, k0, l0, cfg.limit)
    idx = range(1, cfg.limit + 1)
    m_min = min(idx, key=lambda m: b[m])
    m_max = max(idx, key=lambda m: b[m])
    result = {
        "forms": ["delta", "weight16"],
        "limit": cfg.limit,
        "sieve_q": q,
        "k0": k0,
        "l0": l0,
        "first_positive": first_pos,
        "first_negative": first_neg,
        "b_min": {"m": m_min, "value": b[m_min]},
        "b_max": {"m": m_max, "value": b[m_max]},
        "b_positive_count": sum(1 for m in idx if b[m] > 0),
        "b_negative_count": sum(1 for m in idx if b[m] < 0),
    }
    print(_dump(result), file=stdout)
    both = first_pos is not None and first_neg is not None and b[m_min] < 0 < b[m_max]
    return EXIT_PASS if both else EXIT_FAIL


def cmd_simulate(cfg: RunConfig, stdout) -> int:
    thetas = satotate.st_sample(cfg.seed, cfg.samples)
    pos, neg = satotate.sign_frequencies(thetas, cfg.m)
    tol = 4 / math.sqrt(cfg.samples) if cfg.tolerance is None else cfg.tolerance
    reports = [
        DensityReport.build(f"sato-tate m={cfg.m} sign={s} seed={cfg.seed}", k, cfg.samples,
                            satotate.density_closed_form(cfg.m, s), tol)
        for s, k in (("+", pos), ("-", neg))
    ]
    result = {"m": cfg.m, "samples": cfg.samples, "seed": cfg.seed, "reports": [r.to_dict() for r in reports]}
    print(_dump(result), file=stdout)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {
    "tau": cmd_tau,
    "density": cmd_density,
    "zeros": cmd_zeros,
    "oscillate": cmd_oscillate,
    "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heckesign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", help="write tau(n), n <= limit, as n,C CSV")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("density", help="empirical sign density of C(p^m) vs the closed form")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=int, default=100_000)
    p.add_argument("--form", default="delta", help="delta, weight16, or a CSV path")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("--tol", type=float, dest="tolerance")

    p = sub.add_parser("zeros", help="zero pattern of C(p^r) for a trivial-character prime")
    p.add_argument("--ap", type=int, required=True)
    p.add_argument("--norm", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)

    p = sub.add_parser("oscillate", help="simultaneous sign changes of Delta and the weight-16 form")
    p.add_argument("--limit", type=int, default=100)
    p.add_argument("--sieve-q", type=int, default=1, dest="sieve_q")

    p = sub.add_parser("simulate", help="Monte Carlo Sato-Tate sign frequencies vs closed form")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, dest="tolerance")
    return parser


_CONFIG_FIELDS = {"limit", "x", "m", "samples", "seed", "form", "sign", "out", "tolerance"}


def parse_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    cmd = ns.pop("command")
    cfg = RunConfig(cmd, **{k: v for k, v in ns.items() if k in _CONFIG_FIELDS})
    cfg.extra = {k: v for k, v in ns.items() if k not in _CONFIG_FIELDS}
    return cfg


def main(argv=None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg, stdout)
    except (UsageError, ResourceLimitError) as exc:
        print(f"heckesign {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, OSError, ValueError) as exc:
        print(f"heckesign {cfg.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
