from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervalzeta.series import (
    RationalFn,
    TruncSeries,
    cyclotomic_peel,
    detect_eventual_periodicity,
    poly_mul,
    poly_trim,
    rational_from_eventually_periodic,
    rf_to_series,
    series_matches_rf,
    series_matrix_det,
)


def S(coeffs, order):
    return TruncSeries.from_coeffs(coeffs, order)


class TestArithmetic:
    def test_one_is_multiplicative_unit(self):
        s = S([1, 2, 3], 5)
        assert (TruncSeries.one(5) * s).coeffs == s.coeffs

    def test_recip_of_one_minus_t_is_geometric(self):
        s = S([1, -1], 4)
        assert s.recip().coeffs == (1, 1, 1, 1, 1)

    def test_product_against_long_multiplication(self):
        # (1 - t - t^2) * 1/(1 - t^3) at order 6
        left = S([1, -1, -1], 6)
        right = S([1, 0, 0, -1], 6).recip()
        assert (left * right).coeffs == (1, -1, -1, 1, -1, -1, 1)

    def test_recip_requires_unit_constant(self):
        with pytest.raises(ValueError):
            S([0, 1], 4).recip()

    def test_order_truncates_to_minimum(self):
        assert (S([1], 8) * S([1], 3)).order == 3

    def test_compose_scale(self):
        s = S([1, 1, 1, 1], 3)
        assert s.compose_scale(2).coeffs == (1, 2, 4, 8)

    def test_json_round_trip(self):
        s = S([Q(1, 3), -2], 4)
        assert TruncSeries.from_json(s.to_json()).coeffs == s.coeffs


class TestExpLog:
    def test_exp_of_zero(self):
        assert TruncSeries.zero(6).exp().coeffs == (1, 0, 0, 0, 0, 0, 0)

    def test_exp_of_harmonic_series_is_geometric(self):
        # exp(sum t^n / n) = exp(-log(1 - t)) = 1/(1 - t)
        s = TruncSeries(5, (Q(0), Q(1), Q(1, 2), Q(1, 3), Q(1, 4), Q(1, 5)))
        assert s.exp().coeffs == (1, 1, 1, 1, 1, 1)

    def test_log_of_fibonacci_generating_function(self):
        # log(1/(1-t-t^2)) has coefficients (l_{n-1} + l_{n+1})/n
        fib = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
        z = rf_to_series(RationalFn((1,), (1, -1, -1)), 8)
        expected = tuple([Q(0)] + [Q(fib[n - 1] + fib[n + 1], n) for n in range(1, 9)])
        assert z.log().coeffs == expected

    def test_exp_log_preconditions(self):
        with pytest.raises(ValueError):
            S([1, 1], 3).exp()
        with pytest.raises(ValueError):
            S([2, 1], 3).log()

    @given(st.lists(st.integers(-3, 3), min_size=0, max_size=6))
    def test_exp_log_mutually_inverse(self, tail):
        s = TruncSeries.from_coeffs([0] + tail, 8)
        assert s.exp().log().coeffs == s.coeffs


class TestRationalFn:
    def test_geometric_expansion(self):
        assert rf_to_series(RationalFn((1,), (1, -2)), 3).coeffs == (1, 2, 4, 8)

    def test_fibonacci_expansion(self):
        s = rf_to_series(RationalFn((1,), (1, -1, -1)), 7)
        assert s.coeffs == (1, 1, 2, 3, 5, 8, 13, 21)

    def test_long_division(self):
        s = rf_to_series(RationalFn((1, -2), (1, -1)), 4)
        assert s.coeffs == (1, -1, -1, -1, -1)

    def test_matcher(self):
        rf = RationalFn((1,), (1, -1, -1))
        assert series_matches_rf(rf_to_series(rf, 12), rf)
        assert not series_matches_rf(TruncSeries.one(12), rf)

    def test_reduction_is_canonical(self):
        # (1 - t^2)/((1 - t)(1 - t^3)) reduces like (1 + t)/(1 - t^3)
        a = RationalFn((1, 0, -1), poly_mul((1, -1), (1, 0, 0, -1)))
        b = RationalFn((1, 1), (1, 0, 0, -1))
        assert a == b

    def test_denominator_unit_required(self):
        with pytest.raises(ValueError):
            RationalFn((1,), (0, 1))

    def test_json_round_trip(self):
        rf = RationalFn((1, -2), (1, -1))
        assert RationalFn.from_json(rf.to_json()) == rf


class TestDetectPeriodicity:
    def test_constant(self):
        cert = detect_eventual_periodicity([1] * 30)
        assert (cert.preperiod, cert.period) == (0, 1)

    def test_preperiodic(self):
        cert = detect_eventual_periodicity([1] + [-1] * 30)
        assert (cert.preperiod, cert.period) == (1, 1)

    def test_minimal_period(self):
        cert = detect_eventual_periodicity([1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2])
        assert (cert.preperiod, cert.period) == (0, 2)

    def test_no_certificate_on_short_input(self):
        assert detect_eventual_periodicity([1, 2]) is None

    def test_certificate_never_contradicts_inspected_coefficients(self):
        seq = [1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1]
        cert = detect_eventual_periodicity(seq)
        assert cert is not None
        p, k = cert.preperiod, cert.period
        assert all(seq[i + k] == seq[i] for i in range(p, len(seq) - k))

    @given(
        st.lists(st.integers(-2, 2), min_size=0, max_size=4),
        st.lists(st.integers(-2, 2), min_size=1, max_size=4),
    )
    @settings(max_examples=60)
    def test_round_trip_through_rational_fn(self, prefix, cycle):
        rf = rational_from_eventually_periodic(prefix, cycle)
        n = 24
        expected = [prefix[i] if i < len(prefix) else cycle[(i - len(prefix)) % len(cycle)] for i in range(n + 1)]
        assert list(rf_to_series(rf, n).coeffs) == expected


class TestRationalFromEventuallyPeriodic:
    def test_constant_cycle(self):
        assert rational_from_eventually_periodic((), (1,)) == RationalFn((1,), (1, -1))

    def test_prefix_plus_cycle(self):
        assert rational_from_eventually_periodic((1,), (-1,)) == RationalFn((1, -2), (1, -1))

    def test_period_three(self):
        rf = rational_from_eventually_periodic((), (1, -1, -1))
        assert rf == RationalFn((1, -1, -1), (1, 0, 0, -1))


class TestCyclotomicPeel:
    def test_single_factor(self):
        factors, residual = cyclotomic_peel((1, 0, -1))
        assert factors == [2] and residual == (1,)

    def test_two_factors(self):
        factors, residual = cyclotomic_peel(poly_mul((1, -1), (1, 0, 0, -1)))
        assert factors == [1, 3] and residual == (1,)

    def test_not_of_the_form(self):
        factors, residual = cyclotomic_peel((1, 1))
        assert factors == [] and residual == (Q(1), Q(1))

    @given(st.lists(st.integers(1, 4), min_size=0, max_size=4))
    @settings(max_examples=40)
    def test_factors_multiply_back(self, exponents):
        poly = (Q(1),)
        for p in exponents:
            poly = poly_mul(poly, [1] + [0] * (p - 1) + [-1])
        factors, residual = cyclotomic_peel(poly)
        assert sorted(factors) == sorted(exponents)
        rebuilt = residual
        for p in factors:
            rebuilt = poly_mul(rebuilt, [1] + [0] * (p - 1) + [-1])
        assert poly_trim(rebuilt) == poly_trim(poly)


class TestMatrixDet:
    def test_one_by_one(self):
        s = S([2, 1], 4)
        assert series_matrix_det([[s]]).coeffs == s.coeffs

    def test_identity(self):
        one, zero = TruncSeries.one(4), TruncSeries.zero(4)
        assert series_matrix_det([[one, zero], [zero, one]]).coeffs == one.coeffs

    def test_two_by_two(self):
        one, t = TruncSeries.one(4), TruncSeries.var(4)
        det = series_matrix_det([[one, t], [t, one]])
        assert det.coeffs == (1, 0, -1, 0, 0)


small_series = st.lists(st.integers(-3, 3), min_size=1, max_size=9).map(
    lambda cs: TruncSeries.from_coeffs(cs, 8)
)


class TestRingAxioms:
    @given(small_series, small_series, small_series)
    @settings(max_examples=50)
    def test_mul_associative_and_distributive(self, a, b, c):
        assert ((a * b) * c).coeffs == (a * (b * c)).coeffs
        assert ((a + b) * c).coeffs == (a * c + b * c).coeffs

    @given(small_series)
    @settings(max_examples=30)
    def test_recip_is_inverse_when_defined(self, a):
        if a[0] == 0:
            return
        assert (a * a.recip()).coeffs == TruncSeries.one(8).coeffs
