import pytest
from mpmath import mp

from nexpansion.bounds import good_bracket, jarnik_lower, jarnik_upper
from nexpansion.errors import DivergenceError, DomainError, PrecisionInsufficientError
from nexpansion.estimator import AlphabetSpec, estimate_dim_collocation
from nexpansion.schemas import validate_document
from nexpansion.verify import (
    ConditionId,
    check_growth_values,
    condition_threshold,
    verify_covering,
    verify_good_children,
    verify_growth,
    verify_mass_distribution,
    verify_sufficiency,
    verify_telescoping,
    _abstention_compare,
    _exact_children_verdict,
)


class TestMassAndCovering:
    @pytest.mark.parametrize("n,m", [(1, 10), (2, 6)])
    def test_pass_at_proved_exponents(self, n, m):
        s_low, _ = jarnik_lower(n, m)
        s_high, _ = jarnik_upper(n, m)
        mass = verify_mass_distribution(n, m, s_low, depth=4)
        cover = verify_covering(n, m, s_high, depth=4)
        assert mass.passed and cover.passed
        assert mass.count == cover.count == sum((m - n + 1) ** k for k in range(4))

    def test_mass_fails_near_one(self):
        cert = verify_mass_distribution(1, 10, 0.999, depth=3)
        assert cert.status == "FAIL"
        assert cert.witness == ()  # already fails at the empty prefix

    def test_single_branch_always_fails(self):
        cert = verify_mass_distribution(1, 1, 0.5, depth=2)
        assert cert.status == "FAIL"

    def test_covering_fails_at_small_s(self):
        cert = verify_covering(1, 10, 0.5, depth=3)
        assert cert.status == "FAIL"
        assert cert.witness is not None

    def test_duality_exactly_one_fails(self):
        for s in (0.5, 0.999):
            mass = verify_mass_distribution(1, 10, s, depth=3)
            cover = verify_covering(1, 10, s, depth=3)
            assert mass.passed != cover.passed

    def test_witness_reproducible(self):
        cert = verify_covering(1, 10, 0.5, depth=3)
        assert not _exact_children_verdict(
            1, 10, 0.5, cert.witness, require_at_least=False, bits=192
        )

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            verify_mass_distribution(1, 10, 1.5, depth=2)
        with pytest.raises(DomainError):
            verify_covering(1, 10, 0.5, depth=0)
        with pytest.raises(DomainError):
            verify_mass_distribution(3, 2, 0.5, depth=2)

    def test_certificate_json_schema(self):
        cert = verify_mass_distribution(1, 10, 0.999, depth=3)
        doc = cert.to_json_dict()
        validate_document("certificate", doc)
        assert doc["condition_id"] == "MASS_DIST_4_1"


class TestSufficiency:
    def test_pass_at_lower_exponent(self):
        s, _ = jarnik_lower(1, 10)
        cert = verify_sufficiency(1, 10, s, depth=5)
        assert cert.passed
        assert not cert.parameters["hypothesis_violated"]
        assert cert.parameters["min_factor"] >= cert.parameters["worst_case_factor"]

    def test_hypothesis_violated_recorded(self):
        s, _ = jarnik_lower(1, 10)
        cert = verify_sufficiency(1, 3, s, depth=3)
        assert cert.parameters["hypothesis_violated"]

    def test_fails_when_s_too_large(self):
        cert = verify_sufficiency(1, 4, 0.999, depth=3)
        assert cert.status == "FAIL"
        assert cert.witness is not None


class TestGoodChildren:
    def test_pass_at_upper_exponent(self):
        s = good_bracket(1, 2000).raw_upper
        cert = verify_good_children(1, 2000, s, depth=2, cutoff=100_000)
        assert cert.passed
        assert cert.parameters["probe_digits"] == [2000, 2001, 4000, 20000]
        assert cert.count == 1 + 4 + 16

    def test_divergent_exponent(self):
        with pytest.raises(DivergenceError):
            verify_good_children(1, 2000, 0.5, depth=1)

    def test_holds_for_any_summable_exponent(self):
        # the inequality comes from the two-sided interval bounds alone, so
        # it holds throughout s > 1/2, not just near the dimension
        for s in (0.55, 0.75, 0.95):
            cert = verify_good_children(1, 2000, s, depth=1, cutoff=100_000)
            assert cert.passed, s


class TestGrowth:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_exhaustive_pass(self, n):
        cert = verify_growth(n, depth=6, max_digit=n + 4)
        assert cert.passed
        assert cert.count == sum(5**k for k in range(1, 7))

    def test_other_parameters(self):
        assert verify_growth(3, 4, 6).passed

    def test_tampered_values_detected(self):
        # q-sequence of the word (1, 1) with q_2 decremented: 2 -> 1
        assert check_growth_values(1, [1, 1, 2]) is None
        assert check_growth_values(1, [1, 1, 1]) == 2
        # violating the geometric-mean bound for n = 2
        assert check_growth_values(2, [1, 2, 3]) == 2


class TestTelescopingCertificate:
    def test_pass(self):
        cert = verify_telescoping(2, depth=3, max_digit=4, m_end=12)
        assert cert.passed
        assert cert.count == sum(3**k for k in range(4))
        assert cert.condition_id is ConditionId.TELESCOPE_4_6


class TestThresholds:
    def test_estimator_between_thresholds(self):
        s_low = condition_threshold(1, 8, depth=4, condition="mass")
        s_high = condition_threshold(1, 8, depth=4, condition="cover")
        assert s_low < s_high
        estimate = estimate_dim_collocation(AlphabetSpec(1, 1, 8)).value
        assert s_low <= estimate <= s_high

    def test_bad_condition_name(self):
        with pytest.raises(DomainError):
            condition_threshold(1, 8, 3, "middle")


class TestAbstention:
    def test_equal_sides_abstain(self):
        with mp.workprec(192):
            with pytest.raises(PrecisionInsufficientError):
                _abstention_compare(mp.mpf(1), mp.mpf(1), "tie")
            assert _abstention_compare(mp.mpf(1), mp.mpf(2), "lt") == -1
            assert _abstention_compare(mp.mpf(2), mp.mpf(1), "gt") == 1
