#!/usr/bin/env python3
"""Simultaneous sign changes of Delta and the weight-16 form, raw and after sieving.

For each sieve modulus q the forms are replaced by f - (f|U(q))|q, and the
Rankin-Selberg coefficients b_m are recomputed with the matching filters.

    python scripts/oscillation_scan.py --limit 2000 --q 1 2 6 30
"""
import argparse

from heckesign.forms_data import delta_expansion, weight16_expansion
from heckesign.oscillation import find_simultaneous_sign_changes, rankin_coefficients, sieve_construct


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=int, default=2000)
    ap.add_argument("--q", type=int, nargs="+", default=[1, 2, 6, 30, 210])
    args = ap.parse_args()

    f0, g0 = delta_expansion(args.limit), weight16_expansion(args.limit)
    print(f"{'q':>5} {'first +':>8} {'first -':>8} {'#b>0':>6} {'#b<0':>6} {'#b=0':>6}")
    for q in args.q:
        f, g = (f0, g0) if q == 1 else (sieve_construct(f0, q).table, sieve_construct(g0, q).table)
        pos, neg = find_simultaneous_sign_changes(f, g, args.limit)
        b = rankin_coefficients(f, g, q, q * q, 12, 16, args.limit)[1:]
        npos = sum(v > 0 for v in b)
        nneg = sum(v < 0 for v in b)
        print(f"{q:>5} {pos!s:>8} {neg!s:>8} {npos:>6} {nneg:>6} {len(b) - npos - nneg:>6}")


if __name__ == "__main__":
    main()
