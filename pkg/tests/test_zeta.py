import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervalzeta.series import RationalFn, TruncSeries, poly_mul, rf_to_series
from intervalzeta.subshift import fib_adjacency, sft_periodic_counts
from intervalzeta.zeta import (
    NonIntegralCountError,
    counts_from_zeta,
    mt_relation_check,
    zeta_from_counts,
    zeta_vu_closed_form,
)

FIB_ZETA = RationalFn((1,), (1, -1, -1))


class TestZetaFromCounts:
    def test_no_periodic_points(self):
        assert zeta_from_counts([0] * 8, 8).coeffs == TruncSeries.one(8).coeffs

    def test_single_fixed_point(self):
        assert zeta_from_counts([1] * 8, 8).coeffs == (1,) * 9

    def test_fibonacci_shift(self):
        counts = sft_periodic_counts(fib_adjacency(), 32)
        assert zeta_from_counts(counts, 32).coeffs == rf_to_series(FIB_ZETA, 32).coeffs


class TestCountsFromZeta:
    def test_fibonacci(self):
        assert counts_from_zeta(FIB_ZETA, 6) == [1, 3, 4, 7, 11, 18]

    def test_trivial(self):
        assert counts_from_zeta(RationalFn((1,), (1, -1)), 5) == [1] * 5

    def test_cubic_closed_form(self):
        den = poly_mul(poly_mul((1, 0, 0, -1), (1, 0, -1)), (1, -1, -1))
        counts = counts_from_zeta(RationalFn((1,), den), 6)
        assert counts == [1, 5, 7, 9, 11, 23]

    def test_non_integral_is_hard_error(self):
        with pytest.raises(NonIntegralCountError):
            counts_from_zeta(RationalFn((2,), (2, -1)), 4)

    def test_requires_unit_constant(self):
        with pytest.raises(ValueError):
            counts_from_zeta(RationalFn((2,), (1, -1)), 4)

    @given(st.lists(st.integers(0, 5), min_size=10, max_size=10))
    @settings(max_examples=40)
    def test_round_trip(self, counts):
        z = zeta_from_counts(counts, 10)
        # recover by log derivative of the series: n * [t^n] log zeta
        logz = z.log()
        recovered = [int(logz[n] * n) for n in range(1, 11)]
        assert recovered == counts


class TestClosedForm:
    def test_even(self):
        rf = zeta_vu_closed_form(2)
        den = poly_mul(poly_mul((1, 0, -1), (1, 0, 0, -1)), (1, -1, -1))
        assert rf == RationalFn((1,), den)

    def test_odd(self):
        rf = zeta_vu_closed_form(3)
        den = poly_mul(poly_mul((1, -1), (1, 0, 0, -1)), (1, -1, -1))
        assert rf == RationalFn((1,), den)

    def test_parity_only(self):
        assert zeta_vu_closed_form(4) == zeta_vu_closed_form(2)
        assert zeta_vu_closed_form(5) == zeta_vu_closed_form(3)

    def test_rejects_small_nu(self):
        with pytest.raises(ValueError):
            zeta_vu_closed_form(1)

    def test_counts_are_nonnegative_integers(self):
        for nu in range(2, 9):
            counts = counts_from_zeta(zeta_vu_closed_form(nu), 24)
            assert all(c >= 0 for c in counts)


class TestMTRelation:
    def test_full_tent(self):
        zeta_rf = RationalFn((1,), (1, -2))
        det = rf_to_series(RationalFn((1, -2), (1, -1)), 32)
        assert mt_relation_check(zeta_rf, det, 32) == [1]

    def test_det_equals_reciprocal_zeta(self):
        zeta_rf = RationalFn((1,), (1, -1, -1))
        det = rf_to_series(RationalFn((1, -1, -1), (1,)), 32)
        assert mt_relation_check(zeta_rf, det, 32) == []

    def test_unpeelable_polynomial_returns_none(self):
        # phi = 1/(zeta * D) = 1 + t has no (1 - t^p) factorization
        zeta_rf = RationalFn((1,), (1, 1))
        det = TruncSeries.one(32)
        assert mt_relation_check(zeta_rf, det, 32) is None

    def test_non_stabilizing_returns_none(self):
        # phi = 1/(1 - t) never becomes a polynomial
        zeta_rf = RationalFn((1, -1), (1,))
        det = TruncSeries.one(32)
        assert mt_relation_check(zeta_rf, det, 32) is None
