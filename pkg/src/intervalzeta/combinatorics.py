"""Exact calculus on marked-orbit combinatorics vectors and their PL models.

A combinatorics is an integer vector rho in {0..n}^(n+1) recording where a
map sends each of n+1 marked points; its piecewise-linear model connects
the dots over [0, n].  This module provides the validity predicates, orbit
and classification machinery, the virtually-unimodal test, the closed-form
family generator, and exact periodic-orbit enumeration on PL models.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Q = Fraction


@dataclass(frozen=True)
class Combinatorics:
    entries: tuple[int, ...]

    def __post_init__(self):
        n = len(self.entries) - 1
        if n < 1:
            raise ValueError("need at least two entries")
        for i, e in enumerate(self.entries):
            if not (0 <= e <= n):
                raise ValueError("entry %d at position %d is out of {0..%d}" % (e, i, n))

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def to_text(self) -> str:
        return ",".join(str(e) for e in self.entries)

    @classmethod
    def from_text(cls, text: str) -> "Combinatorics":
        return cls(tuple(int(tok) for tok in text.split(",")))

    def to_json(self) -> dict:
        return {"rho": list(self.entries)}

    @classmethod
    def from_json(cls, data: dict) -> "Combinatorics":
        return cls(tuple(int(e) for e in data["rho"]))


def _as_comb(rho) -> Combinatorics:
    if isinstance(rho, Combinatorics):
        return rho
    return Combinatorics(tuple(rho))


@dataclass(frozen=True)
class PLModel:
    """Connect-the-dots model of a combinatorics vector on [0, n].

    Affine with integer slope rho[j+1] - rho[j] on each [j, j+1]; exact on
    rational inputs, and maps [0, n] into itself.
    """

    rho: Combinatorics

    @property
    def n(self) -> int:
        return self.rho.n

    def slope(self, lap: int) -> int:
        return self.rho[lap + 1] - self.rho[lap]

    def __call__(self, x):
        x = x if isinstance(x, Fraction) else Q(x)
        if not (0 <= x <= self.n):
            raise ValueError("evaluation point %s outside [0, %d]" % (x, self.n))
        j = min(int(x), self.n - 1)
        return (self.rho[j + 1] - self.rho[j]) * (x - j) + self.rho[j]

    def iterate(self, x, k: int):
        for _ in range(k):
            x = self(x)
        return x


def pl_model(rho) -> PLModel:
    return PLModel(_as_comb(rho))


@dataclass(frozen=True)
class PMCheck:
    ok: bool
    witness: int | None = None  # first index with rho[i] == rho[i+1]

    def __bool__(self):
        return self.ok


def is_pm(rho) -> PMCheck:
    """Adjacent entries must differ for the PL model to be piecewise monotone."""
    rho = _as_comb(rho)
    for i in range(rho.n):
        if rho[i] == rho[i + 1]:
            return PMCheck(False, i)
    return PMCheck(True)


def turning_points(rho) -> list[int]:
    """Interior indices where the slope sign of the PL model flips."""
    rho = _as_comb(rho)
    if not is_pm(rho):
        raise ValueError("combinatorics has equal adjacent entries")
    out = []
    for i in range(1, rho.n):
        left = rho[i] - rho[i - 1]
        right = rho[i + 1] - rho[i]
        if (left > 0) != (right > 0):
            out.append(i)
    return out


@dataclass(frozen=True)
class OrbitInfo:
    preperiod: int
    cycle: tuple

    @property
    def period(self) -> int:
        return len(self.cycle)

    def points(self) -> tuple:
        return self.cycle


def orbit(rho, i: int) -> OrbitInfo:
    """Forward orbit of index i under i -> rho[i]: preperiod plus cycle."""
    rho = _as_comb(rho)
    if not (0 <= i <= rho.n):
        raise ValueError("index out of range")
    seen: dict[int, int] = {}
    path = []
    x = i
    while x not in seen:
        seen[x] = len(path)
        path.append(x)
        x = rho[x]
    start = seen[x]
    return OrbitInfo(preperiod=start, cycle=tuple(path[start:]))


def orbit_set(rho, i: int) -> frozenset[int]:
    rho = _as_comb(rho)
    info = orbit(rho, i)
    pts = set(info.cycle)
    x = i
    for _ in range(info.preperiod):
        pts.add(x)
        x = rho[x]
    return frozenset(pts)


@dataclass(frozen=True)
class OwnCombinatoricsCheck:
    """Outcome of the own-combinatorics test.

    On failure, ``induced`` is the re-marked combinatorics (marked set =
    boundary plus turning orbits, positions renumbered), and
    ``induced_labels`` presents the same induced map in the original index
    labels: boundary images at the ends, interior images sorted between.
    """

    ok: bool
    induced: Combinatorics | None = None
    induced_labels: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


def _marked_set(rho: Combinatorics) -> list[int]:
    # boundary orbits are included so the marked set is forward invariant
    # even for unframed vectors; for framed ones they add nothing
    marked = orbit_set(rho, 0) | orbit_set(rho, rho.n)
    for c in turning_points(rho):
        marked |= orbit_set(rho, c)
    return sorted(marked)


def induced_combinatorics(rho) -> Combinatorics:
    """Re-mark boundary plus turning orbits and renumber by position."""
    rho = _as_comb(rho)
    marked = _marked_set(rho)
    pos = {y: k for k, y in enumerate(marked)}
    return Combinatorics(tuple(pos[rho[y]] for y in marked))


def is_own_combinatorics(rho) -> OwnCombinatoricsCheck:
    """Every interior marked point must lie on a turning-point orbit."""
    rho = _as_comb(rho)
    if not is_pm(rho):
        raise ValueError("combinatorics has equal adjacent entries")
    covered = set()
    for c in turning_points(rho):
        covered |= orbit_set(rho, c)
    if set(range(1, rho.n)) <= covered:
        return OwnCombinatoricsCheck(True)
    marked = _marked_set(rho)
    interior = marked[1:-1]
    labels = (rho[marked[0]],) + tuple(sorted(rho[y] for y in interior)) + (rho[marked[-1]],)
    return OwnCombinatoricsCheck(False, induced_combinatorics(rho), labels)


def is_framed(rho) -> bool:
    """Boundary indices map into the boundary {0, n}."""
    rho = _as_comb(rho)
    return rho[0] in (0, rho.n) and rho[rho.n] in (0, rho.n)


def _hull_image(rho: Combinatorics, lo: int, hi: int) -> tuple[int, int]:
    vals = [rho[j] for j in range(lo, hi + 1)]
    return min(vals), max(vals)


def is_virtually_unimodal(rho) -> int | None:
    """Dominant turning point, if one exists.

    A turning point c is dominant when, for H = <F^2(c), F(c)>:
    the only turning point interior to H is c; the orbit of c stays in H;
    and every turning orbit eventually enters H.  Since F(H) = H whenever
    the first two conditions hold, eventual entry is equivalent to the
    orbit meeting H, which is what is checked.  The hull invariance
    F(H) = H is verified exactly as part of the test.
    """
    rho = _as_comb(rho)
    own = is_own_combinatorics(rho)
    if not own:
        raise ValueError("combinatorics is not its own combinatorics")
    trn = turning_points(rho)
    for c in trn:
        fc = rho[c]
        f2c = rho[fc]
        lo, hi = min(f2c, fc), max(f2c, fc)
        if lo >= hi:
            continue
        if [t for t in trn if lo < t < hi] != [c]:
            continue
        if not all(lo <= p <= hi for p in orbit_set(rho, c)):
            continue
        if _hull_image(rho, lo, hi) != (lo, hi):
            continue
        if all(any(lo <= p <= hi for p in orbit_set(rho, t)) for t in trn):
            return c
    return None


@dataclass(frozen=True)
class PointClass:
    """Fatou/Julia split of the marked points: Fatou means the orbit meets a
    turning point (every turning point is Fatou through its own orbit)."""

    fatou: frozenset[int]
    julia: frozenset[int]

    def label(self, i: int) -> str:
        return "fatou" if i in self.fatou else "julia"


def classify_points(rho) -> PointClass:
    rho = _as_comb(rho)
    if not is_pm(rho):
        raise ValueError("combinatorics has equal adjacent entries")
    trn = set(turning_points(rho))
    fatou = set()
    for i in range(rho.n + 1):
        if orbit_set(rho, i) & trn:
            fatou.add(i)
    return PointClass(frozenset(fatou), frozenset(range(rho.n + 1)) - frozenset(fatou))


@dataclass(frozen=True)
class ExpandingCheck:
    ok: bool
    witnesses: dict[int, int]  # Julia edge j -> first m with gap > 1
    cycling_edge: int | None = None

    def __bool__(self):
        return self.ok


def is_expanding(rho) -> ExpandingCheck:
    """Adjacent Julia points must separate to distance > 1 under iteration.

    Each Julia edge (j, j+1) is iterated as a pair on {0..n}^2; the finite
    state space means the pair either reaches gap > 1 (witness recorded) or
    revisits a state and can never separate.
    """
    rho = _as_comb(rho)
    cls = classify_points(rho)
    witnesses: dict[int, int] = {}
    for j in range(rho.n):
        if j not in cls.julia or (j + 1) not in cls.julia:
            continue
        a, b = j, j + 1
        seen = {(a, b)}
        m = 0
        witness = None
        while True:
            a, b = rho[a], rho[b]
            m += 1
            if abs(a - b) > 1:
                witness = m
                break
            if (a, b) in seen:
                break
            seen.add((a, b))
        if witness is None:
            return ExpandingCheck(False, witnesses, cycling_edge=j)
        witnesses[j] = witness
    return ExpandingCheck(True, witnesses)


def generate_vu(nu: int) -> Combinatorics:
    """Closed-form virtually unimodal combinatorics with nu turning points.

    Pattern reverse-engineered from the two worked vectors (nu = 2 and 3)
    and regression-locked to them: length nu+6; entry 0 is nu+5 for even nu
    and 0 for odd; entries 1..nu-1 alternate between nu+1 and nu+3 ending
    at nu+1; entries nu..nu+4 are the embedded period-two marking
    (nu+2, nu+3, nu+4, nu+1, nu); the last entry is 0.
    """
    if nu < 2:
        raise ValueError("nu must be >= 2")
    n = nu + 5
    entries = [0] * (n + 1)
    entries[0] = n if nu % 2 == 0 else 0
    for i in range(1, nu):
        entries[i] = nu + 1 if (nu - 1 - i) % 2 == 0 else nu + 3
    entries[nu : nu + 5] = [nu + 2, nu + 3, nu + 4, nu + 1, nu]
    entries[n] = 0
    return Combinatorics(tuple(entries))


# ---------------------------------------------------------------------------
# exact periodic orbits of PL models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegenerateFamily:
    """A lap word along which the p-th iterate is the identity: a whole
    interval of fixed points rather than isolated ones."""

    word: tuple[int, ...]
    interval: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PeriodicOrbits:
    period: int
    orbits: tuple[OrbitInfo, ...]
    degenerate: tuple[DegenerateFamily, ...]


def _itinerary_solutions(model: PLModel, p: int):
    """Solve F^p(x) = x lap word by lap word, exactly.

    Composes the affine branches along each word of laps, solves the fixed
    point equation, and keeps solutions whose forward orbit is consistent
    with the word.  Words whose composition is the identity are returned
    separately with their feasibility interval.
    """
    n = model.n
    slopes = [model.slope(j) for j in range(n)]
    intercepts = [Q(model.rho[j] - slopes[j] * j) for j in range(n)]
    solutions: set[Fraction] = set()
    degenerate: list[DegenerateFamily] = []

    def walk(word, s, b, lo, hi):
        # invariant: {x in [lo, hi]} follow `word` through closed laps, and
        # the composed branch along `word` is x -> s*x + b
        if len(word) == p:
            if s == 1:
                if b == 0:
                    if lo < hi:
                        degenerate.append(DegenerateFamily(word, (lo, hi)))
                    solutions.update((lo, hi))
                return
            x = b / (1 - s)
            if lo <= x <= hi:
                solutions.add(x)
            return
        for j in range(n):
            # next constraint: s*x + b in [j, j+1]
            if s > 0:
                nlo, nhi = max(lo, (j - b) / s), min(hi, (j + 1 - b) / s)
            else:
                nlo, nhi = max(lo, (j + 1 - b) / s), min(hi, (j - b) / s)
            if nlo <= nhi:
                walk(word + (j,), slopes[j] * s, slopes[j] * b + intercepts[j], nlo, nhi)

    walk((), Q(1), Q(0), Q(0), Q(n))
    return solutions, degenerate


def count_fixed_points_of_iterate(model: PLModel, p: int) -> int:
    """Number of isolated solutions of F^p(x) = x, exact."""
    if p < 1:
        raise ValueError("iterate must be >= 1")
    solutions, degenerate = _itinerary_solutions(model, p)
    if degenerate:
        raise ValueError("iterate has an interval of fixed points; count undefined")
    return len(solutions)


def periodic_orbits_of_pl(model: PLModel, p: int) -> PeriodicOrbits:
    """All orbits of minimal period p of the PL model, with exact points.

    Degenerate slope-product-1 lap words (intervals of fixed points) are
    reported, never silently dropped; their endpoints join the isolated
    solutions.
    """
    if p < 1:
        raise ValueError("period must be >= 1")
    if not is_pm(model.rho):
        raise ValueError("model is not piecewise monotone")
    solutions, degenerate = _itinerary_solutions(model, p)
    orbits = []
    seen: set[Fraction] = set()
    for x in sorted(solutions):
        if x in seen:
            continue
        cycle = [x]
        y = model(x)
        while y != x:
            cycle.append(y)
            y = model(y)
        seen.update(cycle)
        if len(cycle) == p:
            first = min(range(len(cycle)), key=lambda k: cycle[k])
            orbits.append(OrbitInfo(0, tuple(cycle[first:] + cycle[:first])))
    return PeriodicOrbits(p, tuple(orbits), tuple(degenerate))


# ---------------------------------------------------------------------------
# construction of virtually unimodal combinatorics from periodic points
# ---------------------------------------------------------------------------

BASE_UNIMODAL = Combinatorics((0, 2, 3, 1, 0))


def _exact_orbit_points(model: PLModel, x: Fraction) -> tuple[list[Fraction], bool]:
    """Forward orbit of a rational point; True when x itself is periodic.

    Denominators never grow under integer-slope PL maps, so the orbit lives
    in a finite set and cycle detection terminates.
    """
    seen: dict[Fraction, int] = {}
    path: list[Fraction] = []
    y = x
    while y not in seen:
        seen[y] = len(path)
        path.append(y)
        y = model(y)
    return path, seen[y] == 0


def build_vu_from_periodic_points(points: Sequence[Fraction]) -> Combinatorics:
    """Marked-orbit construction over the base period-three unimodal model.

    Given periodic points k_1..k_{nu-1} of the base model in [1, 3] (with
    k_{nu-1} <= 2 and strictly alternating sides along the list), marks
    their orbits together with the turning orbit {1, 2, 3}, records the
    induced map as positions, and frames the result with nu-1 new turning
    points whose images oscillate through the chosen points.
    """
    pts = [x if isinstance(x, Fraction) else Q(x) for x in points]
    nu = len(pts) + 1
    model = pl_model(BASE_UNIMODAL)
    for x in pts:
        if not (1 <= x <= 3):
            raise ValueError("point %s outside [1, 3]" % x)
        _, periodic = _exact_orbit_points(model, x)
        if not periodic:
            raise ValueError("point %s is not periodic for the base model" % x)
    if pts and pts[-1] > 2:
        raise ValueError("last point must be <= 2")
    if len(pts) >= 2:
        sgn = [1 if pts[i] > pts[i + 1] else -1 for i in range(len(pts) - 1)]
        if any(sgn[i] == sgn[i + 1] for i in range(len(sgn) - 1)):
            raise ValueError("points must alternate sides along the list")

    marked: set[Fraction] = {Q(1), Q(2), Q(3)}
    for x in pts:
        path, _ = _exact_orbit_points(model, x)
        marked.update(path)
    ys = sorted(marked)
    n_prime = len(ys)
    pos = {y: k + 1 for k, y in enumerate(ys)}  # 1-based marks
    xi = [pos[model(y)] for y in ys]

    n = nu + n_prime
    entries = [0] * (n + 1)
    entries[0] = 0 if (nu - 1) % 2 == 0 else n
    for i in range(1, nu):
        entries[i] = nu + pos[pts[i - 1]] - 1
    for j in range(1, n_prime + 1):
        entries[nu + j - 1] = nu + xi[j - 1] - 1
    entries[n] = 0
    return Combinatorics(tuple(entries))
