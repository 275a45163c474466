import math

import pytest
from mpmath import mp

from nexpansion.bounds import (
    find_good_beta,
    good_bracket,
    good_lower_condition,
    good_lower_exponent,
    jarnik_bracket,
    jarnik_lower,
    jarnik_upper,
    solve_implicit_s,
    tail_bracket,
)
from nexpansion.errors import (
    CapExceededError,
    DivergenceError,
    DomainError,
    NoRootError,
)


class TestJarnik:
    def test_lower_examples(self):
        value, valid = jarnik_lower(1, 100)
        with mp.workprec(200):
            expected = float(1 - 4 / (101 * mp.log(2)))
        assert valid and value == pytest.approx(expected, rel=1e-14)

        value, valid = jarnik_lower(2, 6)
        with mp.workprec(200):
            expected = float(1 - 6 / (7 * mp.log(3)))
        assert valid and value == pytest.approx(expected, rel=1e-14)

    def test_lower_hypothesis_boundary(self):
        assert jarnik_lower(1, 3)[1] is False  # needs m > 2n+1 = 3
        assert jarnik_lower(1, 4)[1] is True

    def test_upper_examples(self):
        value, valid = jarnik_upper(1, 100)
        with mp.workprec(200):
            expected = float(1 - 1 / (101 * mp.log(10201)))
        assert valid and value == pytest.approx(expected, rel=1e-14)
        assert jarnik_upper(1, 1)[1] is False

    def test_range_errors(self):
        with pytest.raises(DomainError):
            jarnik_lower(2, 1)
        with pytest.raises(DomainError):
            jarnik_upper(3, 2)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_bracket_ordering(self, n):
        for m in range(2 * n + 2, 2 * n + 60):
            bracket = jarnik_bracket(n, m)
            assert bracket.raw_lower <= bracket.raw_upper
            assert 0.0 <= bracket.lower <= bracket.upper <= 1.0

    def test_vacuous_lower_reported_raw(self):
        bracket = jarnik_bracket(1, 4)
        assert bracket.raw_lower < 0
        assert bracket.lower == 0.0
        assert bracket.lower_valid  # hypothesis holds even though vacuous

    @pytest.mark.parametrize("n,m", [(1, 10), (1, 50), (2, 6), (2, 20), (3, 9), (4, 40)])
    def test_mass_sufficiency_closed_form(self, n, m):
        # (n+1)^(1-s) (1 - (n+1)/(m+1)) >= 1 at the lower-bound exponent
        s, valid = jarnik_lower(n, m)
        assert valid
        assert (n + 1) ** (1 - s) * (1 - (n + 1) / (m + 1)) >= 1.0

    @pytest.mark.parametrize("n,m", [(1, 2), (1, 100), (2, 6), (3, 30), (4, 11)])
    def test_covering_condition_tight(self, n, m):
        # (1-s) log((m+1)^2/n) == n/(m+1) at the upper-bound exponent
        s, valid = jarnik_upper(n, m)
        assert valid
        lhs = (1 - s) * math.log((m + 1) ** 2 / n)
        assert lhs <= n / (m + 1) * (1 + 1e-12)


class TestGoodBracket:
    def test_values(self):
        bracket = good_bracket(1, 2000)
        with mp.workprec(200):
            lower = float(0.5 + 1 / (2 * mp.log(2002)))
            upper = float(0.5 + mp.log(mp.log(1999)) / (2 * mp.log(1999)))
        assert bracket.raw_lower == pytest.approx(lower, rel=1e-14)
        assert bracket.raw_upper == pytest.approx(upper, rel=1e-14)
        assert bracket.lower_valid and bracket.upper_valid

    def test_validity_threshold(self):
        assert not good_bracket(1, 100).lower_valid  # log 99 < e^2
        assert good_bracket(1, 1700).lower_valid
        assert not good_bracket(2, 2000).lower_valid  # log 1999 < e^3

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            good_bracket(1, 1)
        with pytest.raises(DomainError):
            good_bracket(1, 0.5)
        with pytest.raises(DomainError):
            good_bracket(3, 2.5)

    def test_small_alpha_upper_nan(self):
        bracket = good_bracket(1, 1.5)
        assert math.isnan(bracket.raw_upper)
        assert not bracket.upper_valid

    def test_ordering_and_decay(self):
        previous = None
        for alpha in (2.0e3, 1e4, 1e6, 1e8):
            bracket = good_bracket(1, alpha)
            assert 0.5 < bracket.raw_lower <= bracket.raw_upper
            if previous is not None:
                assert bracket.raw_lower < previous.raw_lower
                assert bracket.raw_upper < previous.raw_upper
            previous = bracket

    def test_limit_is_half(self):
        bracket = good_bracket(1, 1e300)
        assert bracket.raw_lower == pytest.approx(0.5, abs=1e-3)
        assert bracket.raw_upper == pytest.approx(0.5, abs=1e-2)


class TestImplicitRoot:
    def test_residual(self):
        s = solve_implicit_s(1, 2000, tol=1e-12)
        x = 2 * s - 1
        assert abs(x * 1999**x - 2) < 1e-10

    def test_known_root(self):
        with mp.workprec(200):
            expected = 0.63281074242101608718  # findroot at 200 bits
        assert solve_implicit_s(1, 2000) == pytest.approx(expected, abs=1e-11)

    def test_dominated_by_upper_bound(self):
        for n, alpha in [(1, 1700), (1, 2000), (1, 20000), (2, 10**9)]:
            bracket = good_bracket(n, alpha)
            assert bracket.upper_valid
            assert solve_implicit_s(n, alpha) < bracket.raw_upper

    def test_no_root(self):
        with pytest.raises(NoRootError):
            solve_implicit_s(1, 2.0)

    def test_boundary_alpha(self):
        # alpha = n+2 puts the root exactly at s = 1
        assert solve_implicit_s(1, 3.0) == pytest.approx(1.0, abs=1e-9)


class TestTailBracket:
    def test_basel_tail(self):
        bracket = tail_bracket(2, 1.0, 10**4)
        truth = math.pi**2 / 6 - 1
        assert bracket.low <= truth <= bracket.high
        assert bracket.high - bracket.low < 1e-8

    def test_ordering(self):
        bracket = tail_bracket(1000, 0.6, 10**6)
        assert 0 < bracket.low <= bracket.high

    def test_divergence(self):
        with pytest.raises(DivergenceError):
            tail_bracket(10, 0.5, 100)

    def test_cutoff_below_alpha(self):
        with pytest.raises(DomainError):
            tail_bracket(100, 0.8, 50)

    def test_key_covering_condition(self):
        # at the upper-bound exponent the full digit tail stays below (1+n)^-s
        for n, alpha in [(1, 2000), (1, 20000)]:
            s = good_bracket(n, alpha).raw_upper
            bracket = tail_bracket(alpha, s, 10**6)
            assert bracket.high <= (1 + n) ** -s


class TestGoodLowerCondition:
    def test_too_small_beta(self):
        assert not good_lower_condition(1, 2000, 2001)

    def test_monotone_in_beta(self):
        results = [good_lower_condition(1, 2000, beta)
                   for beta in (4000, 4_000_000, 16_384_000, 33_000_000)]
        assert results == sorted(results)  # False <= ... <= True

    def test_doubling_search(self):
        beta = find_good_beta(1, 2000)
        assert beta == 16_384_000
        assert good_lower_condition(1, 2000, beta)
        assert not good_lower_condition(1, 2000, beta // 2)

    def test_cap_exceeded(self):
        with pytest.raises(CapExceededError):
            find_good_beta(1, 2000, cap=100_000)

    def test_exponent_helper(self):
        assert good_lower_exponent(2000) == pytest.approx(
            0.5 + 1 / (2 * math.log(2002)), rel=1e-12
        )
