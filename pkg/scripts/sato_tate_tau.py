#!/usr/bin/env python3
"""Sign densities of tau(p^m) over primes p <= x against the Sato-Tate closed forms.

    python scripts/sato_tate_tau.py --x 100000 --mmax 8
"""
import argparse
import time

from heckesign.forms_data import builtin_eigenform
from heckesign.sign_analysis import empirical_prime_density


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--x", type=int, default=100_000)
    ap.add_argument("--mmax", type=int, default=8)
    ap.add_argument("--form", default="delta", choices=["delta", "weight16"])
    args = ap.parse_args()

    t0 = time.perf_counter()
    form = builtin_eigenform(args.form, args.x)
    print(f"{args.form}: {len(form.ap_table)} primes <= {args.x} ({time.perf_counter() - t0:.1f}s)")
    print(f"{'m':>3} {'pred +':>9} {'emp +':>9} {'pred -':>9} {'emp -':>9} {'|dev|':>8}")
    for m in range(1, args.mmax + 1):
        pos = empirical_prime_density(form, m, "+", args.x)
        neg = empirical_prime_density(form, m, "-", args.x)
        dev = max(abs(pos.deviation), abs(neg.deviation))
        print(f"{m:>3} {pos.predicted:9.5f} {pos.empirical:9.5f} {neg.predicted:9.5f} {neg.empirical:9.5f} {dev:8.5f}")


if __name__ == "__main__":
    main()
