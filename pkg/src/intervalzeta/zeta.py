"""Artin-Mazur zeta functions from periodic-point counts and closed forms.

zeta(t) = exp(sum_n N_n t^n / n).  Counts are recovered from a rational
zeta by its logarithmic derivative; the kneading relation 1/zeta = Phi * D
is checked by peeling Phi into (1 - t^p) factors.
"""

from __future__ import annotations

from typing import Sequence

from .series import (
    Q,
    RationalFn,
    TruncSeries,
    cyclotomic_peel,
    poly_derivative,
    poly_mul,
    poly_sub,
    poly_trim,
    rf_to_series,
)


class NonIntegralCountError(ValueError):
    """A zeta function whose logarithmic derivative is not integer-valued."""


def zeta_from_counts(counts: Sequence[int], order: int) -> TruncSeries:
    """Zeta series through t**order from fixed-point counts N_1..N_order."""
    if len(counts) < order:
        raise ValueError("need counts N_1..N_%d" % order)
    log_zeta = TruncSeries.from_coeffs(
        [0] + [Q(counts[n - 1], n) for n in range(1, order + 1)], order
    )
    return log_zeta.exp()


def counts_from_zeta(rf: RationalFn, order: int) -> list[int]:
    """Fixed-point counts from a rational zeta via t * zeta' / zeta.

    Requires zeta(0) = 1.  Non-integral coefficients mean the input is not
    the zeta function of anything counting points, and are a hard error.
    """
    if rf.at_zero() != 1:
        raise ValueError("zeta must have constant term 1")
    p, q = rf.num, rf.den
    dp, dq = poly_derivative(p), poly_derivative(q)
    num = poly_trim([Q(0)] + list(poly_sub(poly_mul(dp, q), poly_mul(dq, p))))
    den = poly_mul(p, q)
    s = rf_to_series(RationalFn(num, den), order)
    out = []
    for n in range(1, order + 1):
        c = s[n]
        if c.denominator != 1:
            raise NonIntegralCountError("coefficient of t^%d is %s" % (n, c))
        out.append(int(c))
    return out


def zeta_vu_closed_form(nu: int) -> RationalFn:
    """Closed-form zeta 1/(Phi_nu(t)(1-t^3)(1-t-t^2)) for nu >= 2 turning points.

    Phi_nu is 1-t^2 for even nu (boundary two-cycle) and 1-t for odd nu
    (fixed boundary point).
    """
    if nu < 2:
        raise ValueError("nu must be >= 2")
    phi = (1, 0, -1) if nu % 2 == 0 else (1, -1)
    den = poly_mul(poly_mul(phi, (1, 0, 0, -1)), (1, -1, -1))
    return RationalFn((Q(1),), den)


def mt_relation_check(
    zeta: RationalFn, kneading_det: TruncSeries, order: int
) -> list[int] | None:
    """Recover Phi = 1/(zeta * D) and peel it into (1 - t^p) factors.

    Returns the factor exponents when Phi stabilizes to a polynomial within
    the truncation (at least order//2 trailing zero coefficients past its
    degree) and peels completely; None otherwise.
    """
    if zeta.at_zero() != 1:
        raise ValueError("zeta must have constant term 1")
    if kneading_det[0] != 1:
        raise ValueError("kneading determinant must have leading coefficient 1")
    n = min(order, kneading_det.order)
    zs = rf_to_series(zeta, n)
    phi = (zs * kneading_det).recip()
    last_nonzero = max((i for i, c in enumerate(phi.coeffs) if c != 0), default=0)
    if n - last_nonzero < n // 2:
        return None
    factors, residual = cyclotomic_peel(phi.coeffs[: last_nonzero + 1])
    if residual != (Q(1),):
        return None
    return factors
