"""Tests for the binomial and chi-square(1) primitives."""

import math
from fractions import Fraction

import pytest
from scipy.stats import chi2

from oracles import exact_binom_cdf, exact_binom_prefix, exact_lower_index, exact_upper_index
from paired_equiv import (
    BinomialSpec,
    DomainError,
    binom_cdf,
    binom_pmf,
    binom_sf_inclusive,
    chi2_quantile_1,
    chi2_sf_1,
    lower_bound_index,
    upper_bound_index,
)

P_TABLE3 = 4.0 / 21.0  # pooled estimate of the airway-hypertension data
EPS_TABLE3 = 0.0126603


class TestPmf:
    def test_single_trial(self):
        assert binom_pmf(BinomialSpec(1, 0.5), 0) == 0.5

    def test_zero_successes_small_n(self):
        # oracle: exact rational power of the binary rational (1 - p)
        expected = float(Fraction(1) - Fraction(P_TABLE3)) ** 21
        value = binom_pmf(BinomialSpec(21, P_TABLE3), 0)
        assert value == pytest.approx(0.011825572078872590, abs=1e-15)
        assert value == pytest.approx(expected, rel=1e-13)

    def test_empty_product(self):
        assert binom_pmf(BinomialSpec(0, 0.3), 0) == 1.0

    def test_degenerate_probabilities(self):
        assert binom_pmf(BinomialSpec(5, 0.0), 0) == 1.0
        assert binom_pmf(BinomialSpec(5, 0.0), 3) == 0.0
        assert binom_pmf(BinomialSpec(5, 1.0), 5) == 1.0
        assert binom_pmf(BinomialSpec(5, 1.0), 4) == 0.0

    def test_out_of_range_k(self):
        with pytest.raises(DomainError):
            binom_pmf(BinomialSpec(5, 0.5), 6)
        with pytest.raises(DomainError):
            binom_pmf(BinomialSpec(5, 0.5), -1)

    def test_large_n_stays_finite(self):
        spec = BinomialSpec(1600, 0.25)
        value = binom_pmf(spec, 400)
        assert 0.0 < value < 1.0


class TestCdf:
    def test_two_term_sum(self):
        expected = float(exact_binom_cdf(1, 21, P_TABLE3))
        value = binom_cdf(BinomialSpec(21, P_TABLE3), 1)
        assert value == pytest.approx(0.070257810586243028, abs=1e-15)
        assert value == pytest.approx(expected, abs=1e-14)

    def test_full_support(self):
        assert binom_cdf(BinomialSpec(21, P_TABLE3), 21) == 1.0
        assert binom_cdf(BinomialSpec(21, P_TABLE3), -1) == 0.0

    def test_exact_dyadic_value(self):
        assert binom_cdf(BinomialSpec(8, 0.5), 1) == pytest.approx(9 / 256, abs=1e-16)

    @pytest.mark.parametrize("n", [3, 17, 41, 60])
    @pytest.mark.parametrize("p", [0.07, 0.5, 0.93])
    def test_matches_rational_oracle_up_to_n_60(self, n, p):
        spec = BinomialSpec(n, p)
        for x in range(-1, n + 2):
            assert binom_cdf(spec, x) == pytest.approx(
                float(exact_binom_cdf(x, n, p)), abs=1e-12
            )


class TestSfInclusive:
    def test_tail_sum(self):
        expected = float(1 - exact_binom_cdf(6, 21, P_TABLE3))
        value = binom_sf_inclusive(BinomialSpec(21, P_TABLE3), 7)
        assert value == pytest.approx(0.087994081499182198, abs=1e-13)
        assert value == pytest.approx(expected, abs=1e-13)

    def test_whole_support(self):
        assert binom_sf_inclusive(BinomialSpec(5, 0.2), 0) == 1.0

    def test_symmetric_tail(self):
        assert binom_sf_inclusive(BinomialSpec(8, 0.5), 7) == pytest.approx(
            9 / 256, abs=1e-16
        )

    @pytest.mark.parametrize("n", [5, 23, 57])
    def test_tail_complement(self, n):
        spec = BinomialSpec(n, 0.37)
        for x in range(n + 1):
            total = binom_cdf(spec, x) + binom_sf_inclusive(spec, x + 1)
            assert total == pytest.approx(1.0, abs=1e-12)


class TestBoundIndices:
    def test_airway_hypertension_pooled_estimate(self):
        spec = BinomialSpec(21, P_TABLE3)
        assert lower_bound_index(spec, EPS_TABLE3) == 1
        assert upper_bound_index(spec, EPS_TABLE3) == 9

    def test_zero_eps(self):
        assert lower_bound_index(BinomialSpec(21, P_TABLE3), 0.0) == 0

    def test_median_eps(self):
        assert upper_bound_index(BinomialSpec(21, P_TABLE3), 0.5) == 5

    def test_wide_eps_near_tie(self):
        # P(N < 10) = 1023/1024 = 0.99902..., just above eps = 0.999, so the
        # largest admissible L is 9; the upper search needs P(N < U) >= 0.001
        # which first holds at U = 2 because P(N < 1) = 2^-10 < 0.001.
        spec = BinomialSpec(10, 0.5)
        assert lower_bound_index(spec, 0.999) == exact_lower_index(10, 0.5, 0.999) == 9
        assert upper_bound_index(spec, 0.999) == exact_upper_index(10, 0.5, 0.999) == 2

    def test_degenerate_distribution(self):
        spec = BinomialSpec(12, 0.0)
        assert lower_bound_index(spec, 0.3) == 0
        assert upper_bound_index(spec, 0.3) == 1  # P(N < 1) = 1 already

    def test_eps_domain_checked(self):
        with pytest.raises(DomainError):
            lower_bound_index(BinomialSpec(5, 0.5), 1.0)
        with pytest.raises(DomainError):
            upper_bound_index(BinomialSpec(5, 0.5), -0.1)

    @pytest.mark.parametrize("p", [0.5, P_TABLE3, 0.05])
    def test_defining_inequalities_exhaustive(self, p):
        # Every n up to 100 and 21 eps values; the defining inequalities are
        # checked against exact integer arithmetic.
        eps_values = [k / 21.5 for k in range(21)]
        for n in range(1, 101):
            prefix, denom = exact_binom_prefix(n, p)

            def below(idx: int) -> Fraction:
                if idx < 0:
                    return Fraction(0)
                return Fraction(prefix[min(idx, n)], denom)

            spec = BinomialSpec(n, p)
            for eps in eps_values:
                eps_frac = Fraction(eps)
                lower = lower_bound_index(spec, eps)
                assert below(lower - 1) <= eps_frac
                assert below(lower) > eps_frac
                upper = upper_bound_index(spec, eps)
                true_upper = exact_upper_index(n, p, eps)
                assert upper == true_upper


class TestChiSquare:
    def test_published_4dp_values(self):
        assert chi2_sf_1(4.5) == pytest.approx(0.0339, abs=5e-5)
        assert chi2_sf_1(9.0) == pytest.approx(0.0027, abs=5e-5)

    def test_sf_at_zero(self):
        assert chi2_sf_1(0.0) == 1.0

    def test_sf_matches_reference_distribution(self):
        for x in [0.01, 0.5, 1.0, 2.7778, 4.5, 9.0, 20.0, 45.0]:
            assert chi2_sf_1(x) == pytest.approx(chi2.sf(x, 1), rel=1e-12)

    def test_negative_argument_rejected(self):
        with pytest.raises(DomainError):
            chi2_sf_1(-0.1)

    def test_standard_quantile(self):
        assert chi2_quantile_1(0.95) == pytest.approx(3.841459, abs=1e-5)

    def test_quantile_at_zero(self):
        assert chi2_quantile_1(0.0) == 0.0

    def test_quantile_defining_relation(self):
        x = chi2_quantile_1(0.65)
        assert chi2_sf_1(x) == pytest.approx(0.35, abs=1e-10)

    def test_quantile_domain_checked(self):
        with pytest.raises(DomainError):
            chi2_quantile_1(1.0)

    def test_round_trip(self):
        for q in [k / 100 for k in range(1, 100)]:
            assert chi2_sf_1(chi2_quantile_1(q)) == pytest.approx(1.0 - q, abs=1e-9)


class TestSpecValidation:
    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            BinomialSpec(-1, 0.5)

    def test_p_outside_unit_interval_rejected(self):
        with pytest.raises(DomainError):
            BinomialSpec(5, 1.5)
