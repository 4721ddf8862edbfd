"""Kneading machinery for piecewise monotone interval maps.

One-sided itineraries of turning points are computed symbolically: a sided
state (point, side, accumulated sign) is advanced by the map, the next side
being the current side times the slope sign of the lap the sided point sits
in.  On PL models this is exact; no perturbation is ever needed.  Smooth
maps given as callables use a tolerance band around each turning point and
refuse to guess inside it.

The increments assemble into the kneading matrix, and the determinant is
computed from every deletable column and cross-checked.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .combinatorics import PLModel, turning_points
from .series import Q, RationalFn, TruncSeries, poly_add, poly_mul, series_matrix_det


class AmbiguousAddress(Exception):
    """A point fell inside the tolerance band of a turning point."""


class KneadingError(Exception):
    """Internal inconsistency: per-column determinants disagree."""


@dataclass(frozen=True)
class SymbolicAddress:
    """Lap symbol I_j (kind 'lap') or turning symbol C_j (kind 'turn')."""

    kind: str
    index: int

    def __str__(self):
        return ("I%d" if self.kind == "lap" else "C%d") % self.index


@dataclass(frozen=True)
class SidedState:
    """One-sided orbit state: the point, the side it is approached from,
    and the accumulated product of the lap signs seen so far."""

    point: object
    side: int
    sign: int


@dataclass
class PMMap:
    """Piecewise monotone map data: domain, turning points, shape, callable.

    ``tol`` of 0 means exact comparisons (PL models with Fraction data);
    a positive tol gives each turning point a band of radius tol inside
    which addresses are ambiguous.
    """

    a: object
    b: object
    turning: tuple
    shape: tuple[int, ...]
    f: Callable
    tol: object = 0

    def __post_init__(self):
        if len(self.shape) != len(self.turning) + 1:
            raise ValueError("shape needs one sign per lap")
        if any(s not in (1, -1) for s in self.shape):
            raise ValueError("shape entries must be +1 or -1")
        if any(self.shape[i] == self.shape[i + 1] for i in range(len(self.shape) - 1)):
            raise ValueError("shape signs must alternate")

    @property
    def modality(self) -> int:
        return len(self.turning)

    @classmethod
    def from_pl_model(cls, model: PLModel) -> "PMMap":
        trn = turning_points(model.rho)
        if not trn:
            raise ValueError("model has no turning points")
        cuts = [0] + trn
        shape = tuple(1 if model.rho[c + 1] > model.rho[c] else -1 for c in cuts)
        return cls(Q(0), Q(model.n), tuple(Q(c) for c in trn), shape, model)

    @classmethod
    def from_callable(
        cls, f: Callable, a: float, b: float, turning: Sequence[float], tol: float | None = None
    ) -> "PMMap":
        if tol is None:
            tol = 1e-12 * (b - a)
        if tol <= 0:
            raise ValueError("smooth maps need a positive tolerance band")
        cuts = [a, *turning, b]
        shape = tuple(1 if f(cuts[i + 1]) > f(cuts[i]) else -1 for i in range(len(cuts) - 1))
        return cls(a, b, tuple(turning), shape, f, tol)


def address(pm: PMMap, x) -> SymbolicAddress:
    """Address of a point: its lap, or the turning symbol if it is one.

    With a tolerance band, a point within tol of a turning point without
    being exactly equal is Ambiguous rather than silently assigned.
    """
    if not (pm.a <= x <= pm.b):
        raise ValueError("point outside the domain")
    for j, c in enumerate(pm.turning, start=1):
        if x == c:
            return SymbolicAddress("turn", j)
        if pm.tol and abs(x - c) <= pm.tol:
            raise AmbiguousAddress("point %r within tolerance band of turning point %r" % (x, c))
    return SymbolicAddress("lap", bisect_left(list(pm.turning), x) if x > pm.a else 0)


def _sided_lap(pm: PMMap, x, side: int) -> int:
    """Lap index of points immediately on `side` of x.

    A turning point resolves to its adjacent lap on that side; a boundary
    point must face inward.
    """
    m = pm.modality
    if x < pm.a - pm.tol or x > pm.b + pm.tol:
        raise ValueError("orbit left the domain at %r" % (x,))
    for j, c in enumerate(pm.turning, start=1):
        if x == c:
            return j - 1 if side < 0 else j
        if pm.tol and abs(x - c) <= pm.tol:
            raise AmbiguousAddress("sided point %r within tolerance band of %r" % (x, c))
    if x == pm.a or (pm.tol and abs(x - pm.a) <= pm.tol):
        if side < 0 and x == pm.a:
            raise ValueError("side points outside the domain at the left endpoint")
        return 0
    if x == pm.b or (pm.tol and abs(x - pm.b) <= pm.tol):
        if side > 0 and x == pm.b:
            raise ValueError("side points outside the domain at the right endpoint")
        return m
    return bisect_left(list(pm.turning), x)


def theta_series(pm: PMMap, turn_index: int, side: int, order: int) -> list[TruncSeries]:
    """Signed one-sided itinerary of c_i as m+1 coefficient series.

    Component j collects the coefficients of the lap symbol I_j in
    theta(c_i^side) = sum_n eps_0...eps_{n-1} A_n t^n.
    """
    if not (1 <= turn_index <= pm.modality):
        raise ValueError("turning index out of range")
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    m = pm.modality
    comps = [[Q(0)] * (order + 1) for _ in range(m + 1)]
    state = SidedState(pm.turning[turn_index - 1], side, 1)
    for n in range(order + 1):
        lap = _sided_lap(pm, state.point, state.side)
        comps[lap][n] += state.sign
        if n < order:
            s = pm.shape[lap]
            state = SidedState(pm.f(state.point), state.side * s, state.sign * s)
    return [TruncSeries(order, tuple(c)) for c in comps]


@dataclass(frozen=True)
class KneadingData:
    shape: tuple[int, ...]
    matrix: tuple[tuple[TruncSeries, ...], ...]  # m rows, m+1 columns

    @property
    def modality(self) -> int:
        return len(self.matrix)

    @property
    def order(self) -> int:
        return self.matrix[0][0].order

    def increments(self) -> tuple[tuple[TruncSeries, ...], ...]:
        return self.matrix


def kneading_matrix(pm_or_model, order: int) -> KneadingData:
    """Kneading increments nu_i = theta(c_i^+) - theta(c_i^-) as a matrix."""
    pm = PMMap.from_pl_model(pm_or_model) if isinstance(pm_or_model, PLModel) else pm_or_model
    m = pm.modality
    if m < 1:
        raise ValueError("map has no turning points")
    rows = []
    for i in range(1, m + 1):
        plus = theta_series(pm, i, +1, order)
        minus = theta_series(pm, i, -1, order)
        rows.append(tuple(plus[j] - minus[j] for j in range(m + 1)))
    return KneadingData(pm.shape, tuple(rows))


def _column_determinants(kd: KneadingData) -> list[TruncSeries]:
    m = kd.modality
    order = kd.order
    out = []
    for col in range(m + 1):
        minor = [[kd.matrix[i][j] for j in range(m + 1) if j != col] for i in range(m)]
        det = series_matrix_det(minor)
        sign = 1 if col % 2 == 0 else -1
        denom = TruncSeries.from_coeffs((1, -kd.shape[col]), order)
        out.append((sign * det) * denom.recip())
    return out


def per_column_determinants(pm_or_model, order: int) -> list[TruncSeries]:
    """The candidate determinant from each deletable column, for inspection."""
    return _column_determinants(kneading_matrix(pm_or_model, order))


def kneading_determinant(pm_or_model, order: int) -> TruncSeries:
    """The kneading determinant D(t), cross-checked over every column.

    Every deletable column must give the identical series and the leading
    coefficient must be 1; disagreement is an internal hard error.
    """
    cands = per_column_determinants(pm_or_model, order)
    first = cands[0]
    for k, c in enumerate(cands[1:], start=1):
        if c.coeffs != first.coeffs:
            raise KneadingError("column %d determinant disagrees with column 0" % k)
    if first[0] != 1:
        raise KneadingError("kneading determinant must have leading coefficient 1")
    return first


# ---------------------------------------------------------------------------
# unimodal specialization
# ---------------------------------------------------------------------------


def unimodal_eps(model: PLModel, order: int) -> list[int]:
    """Signs eps_1..eps_order of the turning orbit of a unimodal model.

    eps_n is the slope sign of the lap containing F^n(c); an exact return
    to c contributes the product of the previous signs.
    """
    trn = turning_points(model.rho)
    if len(trn) != 1:
        raise ValueError("model is not unimodal")
    c = trn[0]
    rho = model.rho
    left = 1 if rho[1] > rho[0] else -1
    out = []
    running = 1
    x = c
    for _ in range(order):
        x = rho[x]
        if x == c:
            e = running
        else:
            e = left if x < c else -left
        out.append(e)
        running *= e
    return out


def unimodal_kneading(eps: Sequence[int], order: int) -> TruncSeries:
    """Partial-product series 1 + e1 t + e1 e2 t^2 + ... from signs eps."""
    if len(eps) < order:
        raise ValueError("need at least %d signs" % order)
    if any(e not in (1, -1) for e in eps[:order]):
        raise ValueError("signs must be +1 or -1")
    coeffs = [Q(1)]
    for n in range(order):
        coeffs.append(coeffs[-1] * eps[n])
    return TruncSeries(order, tuple(coeffs))


def unimodal_rational_form(eps_prefix: Sequence[int], eps_cycle: Sequence[int]) -> RationalFn:
    """Closed form of the partial-product series of an eventually periodic
    sign sequence, with denominator 1 - t^(2k), reduced.

    With prefix length p-1 and cycle length k, the partial products repeat
    with period (not necessarily minimal) 2k past the prefix, so
    D(t) = (prefix part) + e_{1,p-1} t^{p-1} (cyclic numerator)/(1 - t^{2k}).
    """
    cycle = list(eps_cycle)
    if not cycle:
        raise ValueError("cycle must be nonempty")
    if any(e not in (1, -1) for e in list(eps_prefix) + cycle):
        raise ValueError("signs must be +1 or -1")
    p = len(eps_prefix) + 1
    k = len(cycle)

    def eps_at(n: int) -> int:  # 1-based
        if n < p:
            return eps_prefix[n - 1]
        return cycle[(n - p) % k]

    # partial products e_{1,j} for j = 0..p-1+2k (e_{1,0} = 1)
    e = [1]
    for j in range(1, p + 2 * k):
        e.append(e[-1] * eps_at(j))

    prefix_poly = [Q(c) for c in e[: p - 1]]
    cyc_num = [Q(e[p - 1 + j]) for j in range(2 * k)]
    den = [Q(1)] + [Q(0)] * (2 * k - 1) + [Q(-1)]
    num_tail = [Q(0)] * (p - 1) + cyc_num
    num = poly_add(poly_mul(tuple(prefix_poly), tuple(den)) if prefix_poly else (), num_tail)
    return RationalFn(tuple(num), tuple(den))


# ---------------------------------------------------------------------------
# virtually unimodal structure of the kneading matrix
# ---------------------------------------------------------------------------


def _is_polynomial(s: TruncSeries, margin: int) -> bool:
    last = max((i for i, c in enumerate(s.coeffs) if c != 0), default=-1)
    return s.order - last >= margin


@dataclass(frozen=True)
class VUStructureReport:
    ok: bool
    rows_polynomial_outside_pair: bool
    determinant_factors_through_dominant: bool


def vu_structure_check(kd: KneadingData, dominant_row: int) -> VUStructureReport:
    """Structure of the kneading matrix forced by virtual unimodality.

    For dominant turning point c_j (row j, adjacent laps j-1 and j): every
    other row must be polynomial outside columns {j-1, j} (at least
    order//2 trailing zeros past the detected degree), and the determinant
    after deleting column j-1 must factor exactly through N_{c_j, j}, the
    quotient again being polynomial (the dominant row keeps only that
    entry, its other components vanishing identically).
    """
    m = kd.modality
    j = dominant_row
    if not (1 <= j <= m):
        raise ValueError("dominant row out of range")
    order = kd.order
    margin = order // 2

    rows_ok = all(
        _is_polynomial(kd.matrix[i - 1][col], margin)
        for i in range(1, m + 1)
        if i != j
        for col in range(m + 1)
        if col not in (j - 1, j)
    )

    minor = [[kd.matrix[i][col] for col in range(m + 1) if col != j - 1] for i in range(m)]
    det = series_matrix_det(minor)
    pivot = kd.matrix[j - 1][j]
    factors_ok = False
    if pivot[0] != 0:
        quotient = det * pivot.recip()
        factors_ok = _is_polynomial(quotient, margin)
    return VUStructureReport(rows_ok and factors_ok, rows_ok, factors_ok)
