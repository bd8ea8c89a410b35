"""Iteration engine: Picard runs, contraction theorem verifiers, the
alternating two-map scheme, and the stability verdict.

The two theorem verifiers confirm their conclusions by brute force
(full fixed-point scan plus an orbit from every start) and additionally
re-check the analytic descent inequalities along each orbit, so a
passing report carries two independent confirmations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .contracts import ConditionReport, _Arith, check_kannan
from .exact import compare, exact_div, exact_lt
from .mapkit import (
    EVENTUALLY_CONSTANT,
    EVENTUALLY_PERIODIC,
    TRUNCATED,
    OrbitReport,
    SelfMap,
    fixed_points,
    orbit,
)
from .metric import DigitalMetricSpace
from .space import Point, as_point, fmt_point

CONFIRMS = "confirms_theorem"
REFUTES = "refutes_assertion"
HYPOTHESIS_FAILS = "hypothesis_fails"


@dataclass(frozen=True)
class TheoremReport:
    """Verdict on one theorem instance.

    conclusion is "confirms_theorem" (hypothesis and conclusion both
    verified), "refutes_assertion" (hypothesis true, conclusion false —
    a genuine counterexample), or "hypothesis_fails" (nothing claimed).
    """

    hypothesis: ConditionReport
    conclusion: str
    fixed_point: Point | None = None
    unique: bool = False
    orbits: tuple[OrbitReport, ...] = ()
    detail: str = ""

    def __post_init__(self):
        if self.conclusion not in (CONFIRMS, REFUTES, HYPOTHESIS_FAILS):
            raise ValueError(f"unknown conclusion {self.conclusion!r}")
        if self.conclusion == CONFIRMS and self.fixed_point is None:
            raise ValueError("a confirming report must name the fixed point")
        if self.conclusion == REFUTES and not self.hypothesis.holds:
            raise ValueError("a refutation requires the hypothesis to hold")


@dataclass(frozen=True)
class StabilityVerdict:
    """Whether every Picard orbit settles at the given fixed point."""

    target: Point
    all_orbits_converge: bool
    deviating_orbit: OrbitReport | None = None

    def __post_init__(self):
        if self.all_orbits_converge != (self.deviating_orbit is None):
            raise ValueError("verdict and deviating orbit disagree")


def _worst_ratio(space: DigitalMetricSpace, f: SelfMap):
    """Max of d(fx,fy)/d(x,y) with its first achieving pair (0, None on
    singletons)."""
    ar = _Arith(space)
    d = space.distance
    best = None
    best_pair = None
    for x in space.image.points:
        for y in space.image.points:
            if x == y:
                continue
            ratio = exact_div(d(f(x), f(y)), d(x, y))
            if best is None or best < ratio:
                best, best_pair = ratio, (x, y)
    if best is None:
        return Fraction(0), None
    return best, best_pair


def _all_orbits(f: SelfMap) -> tuple[OrbitReport, ...]:
    return tuple(orbit(f, x) for x in f.domain.points)


def _settles_at(report: OrbitReport, p: Point) -> bool:
    return report.kind == EVENTUALLY_CONSTANT and report.value == p


def banach_verify(space: DigitalMetricSpace, f: SelfMap) -> TheoremReport:
    """The contraction theorem: a map with Lipschitz constant below 1
    has a unique fixed point, reached by every Picard orbit.

    The hypothesis check computes the minimal constant; the conclusion
    is confirmed by scanning Fix(f), running all orbits, and re-checking
    the proof's descent inequality d(x_{n+1}, x_{n+2}) <= k * d(x_n, x_{n+1}).
    """
    ar = _Arith(space)
    k_min, worst = _worst_ratio(space, f)
    holds = exact_lt(k_min, 1) if ar.tol is None else compare(k_min, 1, ar.tol) < 0
    hypothesis = ConditionReport(
        holds=holds,
        witness=None if holds else worst,
        minimal_constant=k_min,
        exact=ar.exact,
    )
    if not holds:
        return TheoremReport(hypothesis, HYPOTHESIS_FAILS)
    fixes = fixed_points(f)
    orbits = _all_orbits(f)
    if len(fixes) != 1:
        return TheoremReport(
            hypothesis,
            REFUTES,
            unique=False,
            orbits=orbits,
            detail=f"expected exactly one fixed point, found {len(fixes)}",
        )
    p = fixes[0]
    for rep in orbits:
        if not _settles_at(rep, p):
            return TheoremReport(
                hypothesis,
                REFUTES,
                fixed_point=None,
                unique=True,
                orbits=orbits,
                detail=f"orbit from {fmt_point(rep.start)} does not settle at {fmt_point(p)}",
            )
        d = space.distance
        for n in range(len(rep.points) - 2):
            step = d(rep.points[n + 1], rep.points[n + 2])
            bound = k_min * d(rep.points[n], rep.points[n + 1])
            if not ar.le(step, bound):
                return TheoremReport(
                    hypothesis,
                    REFUTES,
                    fixed_point=None,
                    unique=True,
                    orbits=orbits,
                    detail=f"descent inequality fails at step {n} from {fmt_point(rep.start)}",
                )
    return TheoremReport(hypothesis, CONFIRMS, fixed_point=p, unique=True, orbits=orbits)


def kannan_descent_constant(a, b) -> Fraction:
    """The proof's orbit-contraction factor A = (a+b) / (1 - (a+b))."""
    s = Fraction(a) + Fraction(b)
    return s / (1 - s)


def kannan_verify(space: DigitalMetricSpace, t: SelfMap, a, b) -> TheoremReport:
    """The two-coefficient displacement theorem: if
    d(Tx,Ty) <= a[d(x,Tx)+d(y,Ty)] + b[d(x,Ty)+d(Tx,y)] with a+b < 1/2,
    then T has a unique fixed point.

    Confirmation scans Fix(T), runs every orbit, and re-checks the
    proof's estimate d(x_n, x_{n+1}) <= A^n * d(x_0, x_1) termwise.
    """
    hypothesis = check_kannan(space, t, a, b)
    if not hypothesis.holds:
        return TheoremReport(hypothesis, HYPOTHESIS_FAILS)
    ar = _Arith(space)
    big_a = kannan_descent_constant(a, b)
    fixes = fixed_points(t)
    orbits = _all_orbits(t)
    if len(fixes) != 1:
        return TheoremReport(
            hypothesis,
            REFUTES,
            unique=False,
            orbits=orbits,
            detail=f"expected exactly one fixed point, found {len(fixes)}",
        )
    p = fixes[0]
    d = space.distance
    for rep in orbits:
        if not _settles_at(rep, p):
            return TheoremReport(
                hypothesis,
                REFUTES,
                fixed_point=None,
                unique=True,
                orbits=orbits,
                detail=f"orbit from {fmt_point(rep.start)} does not settle at {fmt_point(p)}",
            )
        first_step = d(rep.points[0], rep.points[1])
        for n in range(len(rep.points) - 1):
            step = d(rep.points[n], rep.points[n + 1])
            if not ar.le(step, ar.scale(big_a**n, first_step)):
                return TheoremReport(
                    hypothesis,
                    REFUTES,
                    fixed_point=None,
                    unique=True,
                    orbits=orbits,
                    detail=f"descent estimate fails at step {n} from {fmt_point(rep.start)}",
                )
    return TheoremReport(hypothesis, CONFIRMS, fixed_point=p, unique=True, orbits=orbits)


def alternating_orbit(
    s: SelfMap, t: SelfMap, x0, max_steps: int | None = None
) -> OrbitReport:
    """The interleaved orbit x1 = T x0, x2 = S x1, x3 = T x2, ...

    T acts at even indices, S at odd ones.  Repetition is detected on
    (point, parity) states — the point alone can recur without the tail
    repeating — and the reported period is the minimal period of the
    point sequence, which may be smaller than the state period.
    The default budget 2|X| + 2 exhausts the state space.
    """
    if s.domain != t.domain:
        raise ValueError("alternating iteration needs a shared domain")
    x = as_point(x0)
    if x not in t.domain:
        raise ValueError(f"starting point {fmt_point(x)} not in image")
    if max_steps is None:
        max_steps = 2 * len(t.domain) + 2
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    pts = [x]
    seen = {(x, 0): 0}
    for step in range(max_steps):
        x = t(x) if step % 2 == 0 else s(x)
        pts.append(x)
        state = (x, (step + 1) % 2)
        if state in seen:
            first = seen[state]
            cycle = pts[first : len(pts) - 1]
            period = _minimal_period(cycle)
            if period == 1:
                v = cycle[0]
                settle = len(pts)
                while settle > 0 and pts[settle - 1] == v:
                    settle -= 1
                return OrbitReport(
                    tuple(pts), EVENTUALLY_CONSTANT, settle_index=settle, value=v
                )
            return OrbitReport(tuple(pts), EVENTUALLY_PERIODIC, period=period)
        seen[state] = len(pts) - 1
    return OrbitReport(tuple(pts), TRUNCATED)


def _minimal_period(cycle: list) -> int:
    length = len(cycle)
    for cand in range(1, length + 1):
        if length % cand == 0 and all(
            cycle[i] == cycle[(i + cand) % length] for i in range(length)
        ):
            return cand
    return length


def t_stability_verdict(space: DigitalMetricSpace, t: SelfMap, p) -> StabilityVerdict:
    """Stability of Picard iteration at the fixed point p.

    In a uniformly discrete space, perturbed orbits whose error terms
    e_n = d(y_{n+1}, T y_n) tend to 0 are exact orbits from some index
    on, so stability reduces to: every Picard orbit settles at p.
    """
    p = as_point(p)
    if t(p) != p:
        raise ValueError(f"{fmt_point(p)} is not a fixed point")
    for start in space.image.points:
        rep = orbit(t, start)
        if not _settles_at(rep, p):
            return StabilityVerdict(p, False, rep)
    return StabilityVerdict(p, True)
