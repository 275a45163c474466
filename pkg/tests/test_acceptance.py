"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report.  Expected values are recomputed on the fly with mpmath at 200 bits
(independent of the library's own evaluation path); exact identities are
checked in rational arithmetic with zero tolerance.
"""

import random
from fractions import Fraction
from itertools import product

import pytest
from mpmath import mp

from nexpansion.bounds import (
    find_good_beta,
    good_bracket,
    jarnik_lower,
    jarnik_upper,
    solve_implicit_s,
)
from nexpansion.estimator import AlphabetSpec, estimate_dim_collocation, estimate_dim_words
from nexpansion.expansion import DigitWord, check_determinant, convergents
from nexpansion.intervals import (
    check_ratio_bounds,
    check_two_sided_bounds,
    fundamental_interval,
    interval_length,
    telescoping_sum,
)
from nexpansion.verify import (
    verify_covering,
    verify_good_children,
    verify_growth,
    verify_mass_distribution,
)
from conftest import CROSSVAL_CASES, SANDWICH_CASES


def _report(name):
    print(f"\nACCEPTANCE {name}: PASS")


def _random_word(rng, max_extra=20, max_len=10):
    n = rng.randint(1, 4)
    length = rng.randint(1, max_len)
    digits = tuple(rng.randint(n, n + max_extra) for _ in range(length))
    return DigitWord(n, digits)


def test_exact_identities():
    """Determinant and length formulas hold exactly for 10^4 random words."""
    rng = random.Random(20260811)
    for _ in range(10_000):
        word = _random_word(rng)
        pairs = convergents(word)
        assert check_determinant(pairs, word.n)
        interval = fundamental_interval(word)
        assert interval.length == interval_length(word)
        assert interval.length == interval.right - interval.left
    _report("exact-identities")


def test_growth_suite():
    """Denominator growth lemma, exhaustive, exact integers."""
    for n in (1, 2, 3):
        cert = verify_growth(n, depth=6, max_digit=n + 4)
        assert cert.passed
        assert cert.count == sum(5**k for k in range(1, 7))
    _report("growth-suite")


def test_interval_geometry():
    """Two-sided bounds and ratio bounds exhaustively; telescoping exactly."""
    for n in (1, 2, 3):
        digit_range = range(n, n + 5)
        for length in range(1, 7):
            for digits in product(digit_range, repeat=length):
                word = DigitWord(n, digits)
                assert check_two_sided_bounds(word)
                assert check_ratio_bounds(word.prefix(length - 1), digits[-1])
    rng = random.Random(20260812)
    for _ in range(1_000):
        n = rng.randint(1, 4)
        length = rng.randint(0, 8)
        prefix = DigitWord(n, tuple(rng.randint(n, n + 10) for _ in range(length)))
        m = rng.randint(n, n + 30)
        value = telescoping_sum(prefix, m)  # raises on any summed/closed mismatch
        assert isinstance(value, Fraction)
    _report("interval-geometry")


def test_closed_form_reproduction():
    """Bound values match an independent 200-bit evaluation to 1e-12."""
    with mp.workprec(200):
        expect_low = float(1 - mp.mpf(4) / (101 * mp.log(2)))
        expect_up = float(1 - mp.mpf(1) / (101 * mp.log(10201)))
        expect_glow = float(mp.mpf(1) / 2 + 1 / (2 * mp.log(2002)))
        expect_gup = float(mp.mpf(1) / 2 + mp.log(mp.log(1999)) / (2 * mp.log(1999)))
    low, _ = jarnik_lower(1, 100)
    up, _ = jarnik_upper(1, 100)
    assert low == pytest.approx(expect_low, rel=1e-12)
    assert up == pytest.approx(expect_up, rel=1e-12)
    bracket = good_bracket(1, 2000)
    assert bracket.raw_lower == pytest.approx(expect_glow, rel=1e-12)
    assert bracket.raw_upper == pytest.approx(expect_gup, rel=1e-12)
    _report("closed-form-reproduction")


def test_implicit_root_dominance():
    """Residual < 1e-8 and strict dominance by the closed-form upper bound."""
    samples = {1: (1700, 2000, 5000, 20000), 2: (600_000_000, 10**9)}
    for n, alphas in samples.items():
        for alpha in alphas:
            bracket = good_bracket(n, alpha)
            assert bracket.upper_valid, (n, alpha)
            s = solve_implicit_s(n, alpha, tol=1e-12)
            with mp.workprec(200):
                x = 2 * mp.mpf(s) - 1
                residual = abs(x * mp.power(alpha - 1, x) - (1 + n))
            assert residual < 1e-8, (n, alpha)
            assert s < bracket.raw_upper, (n, alpha)
    _report("implicit-root-dominance")


def test_sandwich_validation(sandwich_estimates):
    """Estimates agree to 1e-5 and land inside the applicable bracket."""
    for n, m in SANDWICH_CASES:
        colloc, words = sandwich_estimates[(n, m)]
        assert abs(colloc.value - words.value) <= 1e-5, (n, m)
        lower, lower_valid = jarnik_lower(n, m)
        upper, upper_valid = jarnik_upper(n, m)
        assert upper_valid
        for est in (colloc, words):
            assert est.value - est.tolerance <= upper, (n, m)
            if lower_valid and lower > 0:
                assert est.value + est.tolerance >= lower, (n, m)
    _report("sandwich-validation")


def test_estimator_cross_validation(crossval_estimates):
    """Collocation and word enumeration agree to 1e-5 on all small windows."""
    for n, m in CROSSVAL_CASES:
        colloc, words = crossval_estimates[(n, m)]
        if n == m:
            assert colloc.value == 0.0 and words.value == 0.0
        else:
            diff = abs(colloc.value - words.value)
            assert diff <= 1e-5, (n, m)
            assert diff <= colloc.tolerance + words.tolerance, (n, m)
    _report("estimator-cross-validation")


def test_proof_condition_certificates():
    """Mass/covering certificates PASS at the proved exponents."""
    for n, m in ((1, 10), (1, 50), (2, 6)):
        s_low, valid_low = jarnik_lower(n, m)
        s_high, valid_high = jarnik_upper(n, m)
        assert valid_low and valid_high
        assert verify_mass_distribution(n, m, s_low, depth=4).passed, (n, m)
        assert verify_covering(n, m, s_high, depth=4).passed, (n, m)
    s_up = good_bracket(1, 2000).raw_upper
    assert verify_good_children(1, 2000, s_up, depth=2, cutoff=100_000).passed
    _report("proof-condition-certificates")


def test_good_regime_bracket():
    """Estimated dimension of the searched digit window sits in the bracket."""
    beta = find_good_beta(1, 2000)
    est = estimate_dim_collocation(AlphabetSpec(1, 2000, beta))
    bracket = good_bracket(1, 2000)
    assert est.value > bracket.raw_lower - 1e-6
    assert est.value < bracket.raw_upper + 1e-6
    _report("good-regime-bracket")


def test_limit_behavior():
    """Both bounds decrease strictly toward 1/2, and so does their gap."""
    brackets = [good_bracket(1, alpha) for alpha in (1e4, 1e6, 1e8)]
    for earlier, later in zip(brackets, brackets[1:]):
        assert later.raw_lower < earlier.raw_lower
        assert later.raw_upper < earlier.raw_upper
        assert (later.raw_upper - later.raw_lower) < (
            earlier.raw_upper - earlier.raw_lower
        )
    for bracket in brackets:
        assert bracket.raw_lower > 0.5 and bracket.raw_upper > 0.5
    _report("limit-behavior")


def test_degenerate_estimates_exact_zero():
    """Degenerate one-digit windows return exactly 0 from both methods."""
    for n in (1, 2, 3):
        spec = AlphabetSpec(n, n, n)
        assert estimate_dim_collocation(spec).value == 0.0
        assert estimate_dim_words(spec).value == 0.0
    _report("degenerate-windows")
