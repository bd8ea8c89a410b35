"""Evaluators for the contractive-type conditions studied here.

Every check quantifies over ordered pairs (x, y), diagonal included,
and reports the lexicographically least violation.  On spaces whose
distances are exact (word metric, taxicab, Euclidean) the verdicts are
exact; for other exponents the space's comparison tolerance applies and
reports carry exact=False.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import mpmath

from .exact import compare, exact_div, exact_le, exact_lt, exact_max
from .mapkit import SelfMap
from .metric import DigitalMetricSpace
from .space import Point


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one condition check.

    witness holds the quantified variables at the first failure: a pair
    (x, y) for two-variable conditions, a single point (x,) for
    one-variable ones.  minimal_constant is the least parameter value
    that would make the condition hold, when that is a single-parameter
    question; no_finite_constant marks maps where some pair has zero
    right-hand side against a positive left-hand side, so no constant
    works.  undefined_pairs lists pairs where the condition's expression
    itself is undefined (only the rational two-map form produces these).
    """

    holds: bool
    witness: tuple[Point, ...] | None = None
    minimal_constant: object = None
    no_finite_constant: bool = False
    undefined_pairs: tuple[tuple[Point, Point], ...] = ()
    exact: bool = True

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    @property
    def ill_defined(self) -> bool:
        return bool(self.undefined_pairs)


class PairDominationReport(NamedTuple):
    condition: ConditionReport
    range_included: bool


class ConstancyReport(NamedTuple):
    condition: ConditionReport
    first_constant: bool
    second_constant: bool


def _unit_fraction(value, name: str) -> Fraction:
    q = Fraction(value)
    if not 0 <= q < 1:
        raise ValueError(f"{name} must satisfy 0 <= {name} < 1, got {q}")
    return q


class _Arith:
    """Comparison and scaling bound to one space's exactness regime."""

    def __init__(self, space: DigitalMetricSpace):
        self.tol = space.comparison_tolerance

    @property
    def exact(self) -> bool:
        return self.tol is None

    def le(self, a, b) -> bool:
        if self.tol is None:
            return exact_le(a, b)
        return compare(a, b, self.tol) <= 0

    def positive(self, a) -> bool:
        if self.tol is None:
            return exact_lt(0, a)
        return compare(0, a, self.tol) < 0

    def scale(self, coeff: Fraction, value):
        if self.tol is None:
            return coeff * value
        return mpmath.mpf(coeff.numerator) * value / coeff.denominator

    def max(self, values):
        values = list(values)
        if self.tol is None:
            return exact_max(values)
        return max(values)

    def ratio_max(self, ratios):
        """Largest of num/den ratios; 0 when there are none."""
        pairs = list(ratios)
        if not pairs:
            return Fraction(0)
        if self.tol is None:
            return exact_max([exact_div(num, den) for num, den in pairs])
        return max(num / den for num, den in pairs)


def _pairs(space: DigitalMetricSpace):
    pts = space.image.points
    return itertools.product(pts, pts)


def check_banach(space: DigitalMetricSpace, f: SelfMap, k, minimal: bool = True) -> ConditionReport:
    """d(fx, fy) <= k * d(x, y) over all ordered pairs."""
    k = _unit_fraction(k, "k")
    ar = _Arith(space)
    d = space.distance
    witness = None
    ratios = []
    for x, y in _pairs(space):
        lhs = d(f(x), f(y))
        if witness is None and not ar.le(lhs, ar.scale(k, d(x, y))):
            witness = (x, y)
            if not minimal:
                break
        if minimal and x != y:
            ratios.append((lhs, d(x, y)))
    return ConditionReport(
        holds=witness is None,
        witness=witness,
        minimal_constant=ar.ratio_max(ratios) if minimal else None,
        exact=ar.exact,
    )


def lipschitz_min(space: DigitalMetricSpace, f: SelfMap):
    """Least k with d(fx, fy) <= k * d(x, y) everywhere; 0 on singletons."""
    ar = _Arith(space)
    d = space.distance
    return ar.ratio_max(
        (d(f(x), f(y)), d(x, y)) for x, y in _pairs(space) if x != y
    )


def check_kannan(
    space: DigitalMetricSpace, t: SelfMap, a, b, minimal: bool = True
) -> ConditionReport:
    """d(Tx, Ty) <= a*[d(x,Tx) + d(y,Ty)] + b*[d(x,Ty) + d(Tx,y)].

    The two coefficients must be nonnegative with a + b < 1/2.  No
    minimal constant is reported: the parameter space is the triangle
    {a, b >= 0, a + b < 1/2}, not a half-line.
    """
    a, b = Fraction(a), Fraction(b)
    if a < 0 or b < 0:
        raise ValueError("coefficients must be nonnegative")
    if a + b >= Fraction(1, 2):
        raise ValueError(f"need a + b < 1/2, got {a + b}")
    ar = _Arith(space)
    d = space.distance
    witness = None
    for x, y in _pairs(space):
        tx, ty = t(x), t(y)
        rhs = ar.scale(a, d(x, tx) + d(y, ty)) + ar.scale(b, d(x, ty) + d(tx, y))
        if not ar.le(d(tx, ty), rhs):
            witness = (x, y)
            break
    return ConditionReport(holds=witness is None, witness=witness, exact=ar.exact)


def _max_term_check(space, t, r, terms_of, minimal):
    """Shared core for the r * max{...} condition family."""
    r = _unit_fraction(r, "r")
    ar = _Arith(space)
    witness = None
    ratios = []
    for x, y in _pairs(space):
        lhs = space.distance(t(x), t(y))
        biggest = ar.max(terms_of(x, y))
        if witness is None and not ar.le(lhs, ar.scale(r, biggest)):
            witness = (x, y)
            if not minimal:
                break
        if minimal and ar.positive(biggest):
            ratios.append((lhs, biggest))
    return ConditionReport(
        holds=witness is None,
        witness=witness,
        minimal_constant=ar.ratio_max(ratios) if minimal else None,
        exact=ar.exact,
    )


def check_quasi(space: DigitalMetricSpace, t: SelfMap, r, minimal: bool = True) -> ConditionReport:
    """d(Tx, Ty) <= r * max{d(x,y), d(x,Tx), d(y,Ty)}."""
    d = space.distance

    def terms(x, y):
        return (d(x, y), d(x, t(x)), d(y, t(y)))

    return _max_term_check(space, t, r, terms, minimal)


def check_ciric5(space: DigitalMetricSpace, t: SelfMap, r, minimal: bool = True) -> ConditionReport:
    """d(Tx, Ty) <= r * max of the five point/image distances."""
    d = space.distance

    def terms(x, y):
        return (d(x, y), d(x, t(x)), d(y, t(y)), d(x, t(y)), d(t(x), y))

    return _max_term_check(space, t, r, terms, minimal)


def check_pair_domination(
    space: DigitalMetricSpace, g: SelfMap, h: SelfMap, rho, minimal: bool = True
) -> PairDominationReport:
    """d(Hx, Hy) <= rho * d(Gx, Gy) for all pairs, plus H(X) subset of G(X)."""
    rho = _unit_fraction(rho, "rho")
    if g.domain != h.domain:
        raise ValueError("both maps must share one domain")
    ar = _Arith(space)
    d = space.distance
    witness = None
    no_finite = False
    ratios = []
    for x, y in _pairs(space):
        lhs = d(h(x), h(y))
        base = d(g(x), g(y))
        if witness is None and not ar.le(lhs, ar.scale(rho, base)):
            witness = (x, y)
            if not minimal:
                break
        if minimal:
            if ar.positive(base):
                ratios.append((lhs, base))
            elif ar.positive(lhs):
                no_finite = True
    condition = ConditionReport(
        holds=witness is None,
        witness=witness,
        minimal_constant=None if (no_finite or not minimal) else ar.ratio_max(ratios),
        no_finite_constant=no_finite,
        exact=ar.exact,
    )
    return PairDominationReport(condition, h.image_set <= g.image_set)


def check_saluja(
    space: DigitalMetricSpace, j: SelfMap, k: SelfMap, xi, minimal: bool = True
) -> ConstancyReport:
    """d(Ju, Jq) + d(Ku, Kq) <= xi * d(Ku, Kq) for all ordered pairs.

    With xi < 1 the inequality forces both maps constant (subtract the
    K-term: (1 - xi) * d(Ku, Kq) <= -d(Ju, Jq) <= 0), so the report also
    states each map's constancy.
    """
    xi = _unit_fraction(xi, "xi")
    if j.domain != k.domain:
        raise ValueError("both maps must share one domain")
    ar = _Arith(space)
    d = space.distance
    witness = None
    no_finite = False
    ratios = []
    for u, q in _pairs(space):
        lhs_j = d(j(u), j(q))
        base = d(k(u), k(q))
        if witness is None and not ar.le(lhs_j + base, ar.scale(xi, base)):
            witness = (u, q)
            if not minimal:
                break
        if minimal:
            if ar.positive(base):
                ratios.append((lhs_j + base, base))
            elif ar.positive(lhs_j):
                no_finite = True
    condition = ConditionReport(
        holds=witness is None,
        witness=witness,
        minimal_constant=None if (no_finite or not minimal) else ar.ratio_max(ratios),
        no_finite_constant=no_finite,
        exact=ar.exact,
    )
    return ConstancyReport(condition, j.is_constant, k.is_constant)


def parv_rational_check(space: DigitalMetricSpace, t: SelfMap, s: SelfMap) -> ConditionReport:
    """The rational two-map bound
    d(Tx, Sy) <= [d(x,Tx)d(x,Sy) + d(y,Sy)d(y,Tx)] / [d(x,Sy) + d(y,Tx)].

    Pairs with zero denominator are collected as undefined; in
    particular every common fixed point p makes (p, p) undefined, which
    is the structural flaw this check exposes.  The verdict quantifies
    over the defined pairs only, by cross-multiplication (the
    denominator is positive there), so no division is ever performed.
    """
    if t.domain != s.domain:
        raise ValueError("both maps must share one domain")
    ar = _Arith(space)
    d = space.distance
    witness = None
    undefined = []
    for x, y in _pairs(space):
        dx_sy = d(x, s(y))
        dy_tx = d(y, t(x))
        denom = dx_sy + dy_tx
        if not ar.positive(denom):
            undefined.append((x, y))
            continue
        numer = d(x, t(x)) * dx_sy + d(y, s(y)) * dy_tx
        if witness is None and not ar.le(d(t(x), s(y)) * denom, numer):
            witness = (x, y)
    return ConditionReport(
        holds=witness is None,
        witness=witness,
        undefined_pairs=tuple(undefined),
        exact=ar.exact,
    )


def weakly_commutative(space: DigitalMetricSpace, s: SelfMap, t: SelfMap) -> ConditionReport:
    """d(S(T(x)), T(S(x))) <= d(Sx, Tx) for every point x."""
    if s.domain != t.domain:
        raise ValueError("both maps must share one domain")
    ar = _Arith(space)
    d = space.distance
    for x in space.image.points:
        if not ar.le(d(s(t(x)), t(s(x))), d(s(x), t(x))):
            return ConditionReport(holds=False, witness=(x,), exact=ar.exact)
    return ConditionReport(holds=True, exact=ar.exact)


def compatible(space: DigitalMetricSpace, s: SelfMap, t: SelfMap) -> ConditionReport:
    """Finite-space reduction of compatibility: S and T commute at every
    coincidence point.

    The limit form (d(STx_n, TSx_n) -> 0 whenever Sx_n and Tx_n share a
    limit) collapses on a uniformly discrete space: convergent sequences
    are eventually constant, so the quantifier only ever reaches points
    with Sx = Tx, and "distance tends to 0" means equality there.
    """
    if s.domain != t.domain:
        raise ValueError("both maps must share one domain")
    for x in space.image.points:
        if s(x) == t(x) and s(t(x)) != t(s(x)):
            return ConditionReport(holds=False, witness=(x,), exact=True)
    return ConditionReport(holds=True, exact=True)
