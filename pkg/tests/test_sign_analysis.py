import json
import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckesign.forms_data import DataError, builtin_eigenform
from heckesign.hecke_core import (
    Eigenform,
    PrimeSite,
    ZeroPattern,
    angle_of,
    chebyshev_value,
    classify_zero_pattern,
    hecke_power,
    hecke_powers,
    normalized_coeff,
)
from heckesign.sign_analysis import (
    DensityReport,
    SignSequence,
    classify_nonvanishing_set,
    discrepancy_report,
    empirical_prime_density,
    simultaneous_density,
    sign_changes,
    weyl_discrepancy,
)


def test_sign_changes_examples():
    assert sign_changes(SignSequence([1, 2, -1, 0, 3, -4])) == [(2, 3), (3, 5), (5, 6)]
    assert sign_changes([0, 0, 0]) == []
    assert sign_changes([]) == []
    assert SignSequence([5, 6])[1] == 5


def test_tau_prime_power_signs_follow_sine():
    seq = hecke_powers(-24, 1, 2, 12, 50)[1:]
    changes = sign_changes(SignSequence(seq))
    assert changes
    theta = angle_of(normalized_coeff(-24, 2, 12, 1))
    for r, c in enumerate(seq, start=1):
        assert (c > 0) == (math.sin((r + 1) * theta) > 0)


@given(st.lists(st.integers(-3, 3), max_size=40))
def test_sign_changes_brute(values):
    nz = [(i, v) for i, v in enumerate(values, start=1) if v]
    want = [(a[0], b[0]) for a, b in zip(nz, nz[1:]) if (a[1] > 0) != (b[1] > 0)]
    assert sign_changes(values) == want


# ------------------------------------------------------- non-vanishing set


def brute_A(pf, pg, mmax):
    return {m for m in range(1, mmax + 1) if not pf.vanishes_at(m) and not pg.vanishes_at(m)}


PATTERNS = [ZeroPattern.empty()] + [ZeroPattern.progression(t) for t in (2, 3, 4, 6)]


def test_nonvanishing_examples():
    e, t2, t3 = ZeroPattern.empty(), ZeroPattern.progression(2), ZeroPattern.progression(3)
    c = classify_nonvanishing_set(e, e)
    assert (c.kind, c.density) == ("AllOfN", 1)
    c = classify_nonvanishing_set(t2, e)
    assert (c.kind, c.density) == ("EvenIndices", Fraction(1, 2))
    c = classify_nonvanishing_set(t3, t2)
    assert c.kind == "Other"
    assert c.density == Fraction(1, 3)
    want = {m for m in range(1, 10**4 + 1) if m % 3 != 2 and m % 2 == 0}
    assert {m for m in range(1, 10**4 + 1) if c.contains(m)} == want
    assert len(want) / 10**4 == pytest.approx(1 / 3, abs=1e-3)


@pytest.mark.parametrize("pf, pg", list(product(PATTERNS, PATTERNS)))
def test_nonvanishing_matches_brute(pf, pg):
    c = classify_nonvanishing_set(pf, pg)
    a = brute_A(pf, pg, 1000)
    assert {m for m in range(1, 1001) if c.contains(m)} == a
    assert c.density == Fraction(sum(1 for m in range(1, c.period + 1) if m in a), c.period)
    if 2 in (pf.modulus, pg.modulus):
        assert c.kind in ("EvenIndices", "Other")
        assert a <= set(range(2, 1001, 2))


def test_nonvanishing_site_mismatch():
    with pytest.raises(ValueError):
        classify_nonvanishing_set(ZeroPattern.empty(PrimeSite(2)), ZeroPattern.empty(PrimeSite(3)))


@pytest.mark.parametrize("a_g", [0, -24, 64, 37])
def test_nonvanishing_from_exact_coefficients(a_g):
    # f has a_p = 0 at p = 2; A_p must be exactly 2N up to 10^3
    site = PrimeSite(2)
    pf = classify_zero_pattern(0, 2, 12, site)
    pg = classify_zero_pattern(a_g, 2, 12, site)
    cf = hecke_powers(0, 1, 2, 12, 1000)
    cg = hecke_powers(a_g, 1, 2, 12, 1000)
    a = {m for m in range(1, 1001) if cf[m] * cg[m] != 0}
    assert a <= set(range(2, 1001, 2))
    c = classify_nonvanishing_set(pf, pg)
    assert {m for m in range(1, 1001) if c.contains(m)} == a
    if pg.kind == "Empty":
        assert a == set(range(2, 1001, 2))
        assert c.kind == "EvenIndices"


# ---------------------------------------------------------- prime densities


@pytest.fixture(scope="module")
def delta_1e5():
    return builtin_eigenform("delta", 10**5)


def test_prime_density_delta(delta_1e5):
    r = empirical_prime_density(delta_1e5, 1, "+", 10**5)
    assert r.denominator == 9592
    assert r.passed and abs(r.empirical - 0.5) <= 0.02
    r = empirical_prime_density(delta_1e5, 2, "-", 10**5)
    assert r.predicted == pytest.approx(0.6089977810442294)
    assert abs(r.empirical - r.predicted) <= 0.02


def test_prime_density_direct_count(delta_1e5):
    x = 2000
    want = sum(1 for s, ap in delta_1e5.ap_table.items() if s.norm <= x and hecke_power(ap, 1, s.norm, 12, 3) < 0)
    total = sum(1 for s in delta_1e5.ap_table if s.norm <= x)
    r = empirical_prime_density(delta_1e5, 3, "-", x)
    assert (r.numerator, r.denominator) == (want, total)


def test_prime_density_errors():
    empty = Eigenform(12, 1, "empty", {})
    with pytest.raises(DataError):
        empirical_prime_density(empty, 1, "+", 1)
    gappy = Eigenform(12, 1, "gappy", {PrimeSite(2): -24, PrimeSite(5): 4830})
    with pytest.raises(DataError, match="missing"):
        empirical_prime_density(gappy, 1, "+", 10)


def test_prime_density_skips_level_and_counts_norms():
    f = Eigenform(4, 3, "synthetic", {PrimeSite(2): 0, PrimeSite(3): 1, PrimeSite(5, 2): 100, PrimeSite(7): -5})
    r = empirical_prime_density(f, 1, "-", 30)  # norms 2, 25, 7; 3 divides the level
    assert (r.numerator, r.denominator) == (1, 3)


def test_density_report_json_roundtrip():
    r = DensityReport.build("x", 3, 4, 0.5, 0.1)
    assert r.empirical == 0.75 and r.passed is False
    d = json.loads(r.to_json())
    assert set(d) == {"label", "predicted", "empirical", "numerator", "denominator", "tolerance", "pass"}
    assert DensityReport.from_dict(d) == r
    assert DensityReport.build("y", 1, 2).passed is None


# ------------------------------------------------ simultaneous signs, mod 1

# arccos(1/3) / pi is irrational (Niven)
GENERIC = math.acos(1 / 3)


def test_simultaneous_equal_angles():
    r = simultaneous_density(GENERIC, GENERIC, 10**5)
    assert r.predicted is None
    assert r.empirical == 1.0
    assert simultaneous_density(GENERIC, GENERIC, 10**5, "-").numerator == 0


def test_golden_angle_is_rational():
    # arccos((sqrt 5 - 1)/4) = 2 pi / 5: the product is a square that vanishes at k+1 = 0 mod 5
    t = math.acos((math.sqrt(5) - 1) / 4)
    assert t == pytest.approx(2 * math.pi / 5, abs=1e-15)
    assert simultaneous_density(t, t, 10**4).numerator == 8000


def test_simultaneous_generic_pair():
    r = simultaneous_density(GENERIC, math.pi * (math.sqrt(3) - 1), 10**6, "+", independent=True)
    assert r.predicted == 0.5
    assert abs(r.empirical - 0.5) <= 0.01 and r.passed


def _exact_sin_sign(k, t):
    # sign of sin(k pi / t) for integer k, t
    r = k % (2 * t)
    return 0 if r % t == 0 else (1 if r < t else -1)


def test_simultaneous_rational_pair_period_12():
    n = 10**4
    prods = [_exact_sin_sign(k + 1, 2) * _exact_sin_sign(k + 1, 3) for k in range(1, n + 1)]
    pos = sum(1 for p in prods if p > 0)
    neg = sum(1 for p in prods if p < 0)
    period = [_exact_sin_sign(k, 2) * _exact_sin_sign(k, 3) for k in range(12)]
    assert sum(1 for p in period if p) == 4  # nonzero density 1/3
    assert simultaneous_density(math.pi / 2, math.pi / 3, n, "+").numerator == pos
    assert simultaneous_density(math.pi / 2, math.pi / 3, n, "-").numerator == neg
    assert (pos + neg) / n == pytest.approx(1 / 3, abs=1e-3)


def test_simultaneous_rejects_boundary_angles():
    with pytest.raises(ValueError):
        simultaneous_density(0.0, 1.0, 10)
    with pytest.raises(ValueError):
        simultaneous_density(1.0, math.pi, 10)


def _grid_discrepancy_oracle(alpha, beta, n, grid=64):
    pts = [((k * alpha) % 1.0, (k * beta) % 1.0) for k in range(1, n + 1)]
    worst = 0.0
    for i in range(1, grid + 1):
        for j in range(1, grid + 1):
            a, b = i / grid, j / grid
            c = sum(1 for x, y in pts if x < a and y < b)
            worst = max(worst, abs(c / n - a * b))
    return worst


@pytest.mark.parametrize("alpha, beta, n", [(math.sqrt(2) - 1, math.sqrt(3) - 1, 500), (0.5, 1 / 3, 60), (0.1234, 0.777, 300)])
def test_discrepancy_matches_oracle(alpha, beta, n):
    assert weyl_discrepancy(alpha, beta, n) == pytest.approx(_grid_discrepancy_oracle(alpha, beta, n), abs=1e-12)


def test_discrepancy_examples():
    d = discrepancy_report(0.0, 0.0, 1000)
    assert d.degenerate
    assert d.value == pytest.approx(1 - 1 / 64**2)
    assert weyl_discrepancy(math.sqrt(2) - 1, math.sqrt(3) - 1, 10**5) < 0.02
    rat = discrepancy_report(0.5, 1 / 3, 10**5)
    assert rat.degenerate and rat.distinct_points == 6
    assert rat.value > 0.1


def test_discrepancy_decreases_for_irrational_pair():
    vals = [weyl_discrepancy(math.sqrt(2) - 1, math.sqrt(3) - 1, 10**k) for k in range(2, 6)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert not discrepancy_report(math.sqrt(2) - 1, math.sqrt(3) - 1, 10**4).degenerate


def test_sign_consistency_across_modules(tau_table):
    for p in (2, 3, 5, 7, 11, 13, 97):
        ap = tau_table[p]
        theta = angle_of(normalized_coeff(ap, p, 12, 1))
        for m, c in enumerate(hecke_powers(ap, 1, p, 12, 40)):
            v = chebyshev_value(theta, m)
            if abs(v) > 1e-9:
                assert (c > 0) == (v > 0)
