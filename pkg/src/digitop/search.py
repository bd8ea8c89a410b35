"""Counterexample hunts over small spaces, plus the curated suite that
re-derives every headline verdict of this laboratory at desk scale.

Each searchable assertion binds a hypothesis predicate (from contracts)
to a conclusion predicate (from mapkit/fixpoint).  A search scans a
fixed, deterministic universe — digital intervals and small rectangular
grids, under the taxicab, Euclidean, and word metrics — and either
returns the first hypothesis-true/conclusion-false witness or an
exhaustion certificate.  Witnesses replay: SearchOutcome.verify()
re-runs both predicates from scratch.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from . import contracts, fixpoint, mapkit
from .mapkit import (
    EnumerationBudgetError,
    MAP_ENUM_BUDGET,
    SelfMap,
    enumerate_selfmaps,
    fixed_points,
    validate_selfmap,
)
from .metric import L1, L2, SHORTEST_PATH, DigitalMetricSpace, MetricSpec
from .space import C1, C2, DigitalImage, digital_interval

#: Largest pair-enumeration workload accepted ((4 points)^(2*4) tables).
PAIR_ENUM_BUDGET = 65536

MAX_SIZE_BOUND = 5

DEFAULT_PARAM_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))

COUNTEREXAMPLE = "counterexample"
EXHAUSTED = "exhausted"


def enumerate_map_pairs(img: DigitalImage) -> Iterator[tuple[SelfMap, SelfMap]]:
    """All ordered pairs of self-maps, lexicographic by value tables."""
    n = len(img)
    if (n**n) ** 2 > PAIR_ENUM_BUDGET:
        raise EnumerationBudgetError(
            f"({n}^{n})^2 map pairs exceed the enumeration budget of {PAIR_ENUM_BUDGET}"
        )
    maps = list(enumerate_selfmaps(img))
    return itertools.product(maps, maps)


def sample_maps(img: DigitalImage, count: int, seed: int) -> tuple[SelfMap, ...]:
    """Deterministic pseudo-random self-maps for property probing."""
    rng = random.Random(seed)
    pts = img.points
    return tuple(
        SelfMap(img, tuple(rng.choice(pts) for _ in pts)) for _ in range(count)
    )


def _strictly_increasing_1d(f: SelfMap) -> bool:
    vals = [v[0] for v in f.values]
    return all(a < b for a, b in zip(vals, vals[1:]))


def _common_fixed_points(f: SelfMap, g: SelfMap) -> tuple:
    return tuple(p for p in f.domain.points if f(p) == p and g(p) == p)


def _unique_common_fix(space, maps) -> bool:
    return len(_common_fixed_points(*maps)) == 1


def _some_common_fix(space, maps) -> bool:
    return len(_common_fixed_points(*maps)) >= 1


def _has_fix(space, maps) -> bool:
    return bool(fixed_points(maps[0]))


def _alternating_limits_are_unique_common_fix(space, maps) -> bool:
    """Every accumulation point of every interleaved orbit is the one
    common fixed point."""
    t, s = maps
    common = _common_fixed_points(t, s)
    for x0 in space.image.points:
        rep = fixpoint.alternating_orbit(s, t, x0)
        for a in mapkit.accumulation_points(rep):
            if len(common) != 1 or a != common[0]:
                return False
    return True


@dataclass(frozen=True)
class _Assertion:
    """A searchable claim: hypothesis and conclusion predicates."""

    key: str
    arity: int
    param: str | None
    hypothesis: Callable
    conclusion: Callable
    one_dimensional_only: bool = False


def _hyp_quasi(space, maps, r):
    return contracts.check_quasi(space, maps[0], r, minimal=False).holds


def _hyp_five_term(space, maps, r):
    return contracts.check_ciric5(space, maps[0], r, minimal=False).holds


def _hyp_dominated(space, maps, rho):
    g, h = maps
    return contracts.check_pair_domination(space, g, h, rho, minimal=False).condition.holds


def _hyp_dominated_with_range(space, maps, rho):
    g, h = maps
    rep = contracts.check_pair_domination(space, g, h, rho, minimal=False)
    return rep.condition.holds and rep.range_included


def _hyp_dominated_monotone(space, maps, rho):
    g, h = maps
    if not (_strictly_increasing_1d(g) and _strictly_increasing_1d(h)):
        return False
    return _hyp_dominated_with_range(space, maps, rho)


def _hyp_sum_bound(space, maps, xi):
    j, k = maps
    if not contracts.weakly_commutative(space, j, k).holds:
        return False
    return contracts.check_saluja(space, j, k, xi, minimal=False).condition.holds


def _hyp_rational(space, maps, _param):
    t, s = maps
    return contracts.parv_rational_check(space, t, s).holds


def _concl_compatible(space, maps) -> bool:
    return contracts.compatible(space, *maps).holds


ASSERTIONS: dict[str, _Assertion] = {
    a.key: a
    for a in (
        _Assertion("quasi-fixed-point", 1, "r", _hyp_quasi, _has_fix),
        _Assertion("five-term-fixed-point", 1, "r", _hyp_five_term, _has_fix),
        _Assertion(
            "dominated-common-fix-with-range",
            2,
            "rho",
            _hyp_dominated_with_range,
            _unique_common_fix,
        ),
        _Assertion("dominated-common-fix", 2, "rho", _hyp_dominated, _unique_common_fix),
        _Assertion(
            "dominated-monotone-compatible",
            2,
            "rho",
            _hyp_dominated_monotone,
            _concl_compatible,
            one_dimensional_only=True,
        ),
        _Assertion("sum-bound-common-fix", 2, "xi", _hyp_sum_bound, _some_common_fix),
        _Assertion(
            "rational-alternating-common-fix",
            2,
            None,
            _hyp_rational,
            _alternating_limits_are_unique_common_fix,
        ),
    )
}


@dataclass(frozen=True)
class SearchOutcome:
    """Result of one assertion hunt.

    status "counterexample" carries the witness space/maps/param;
    "exhausted" certifies that no hypothesis-true/conclusion-false
    instance exists in the scanned universe.
    """

    assertion: str
    status: str
    size_bound: int
    param_grid: tuple[Fraction, ...]
    space: DigitalMetricSpace | None = None
    maps: tuple[SelfMap, ...] = ()
    param: Fraction | None = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == COUNTEREXAMPLE and not self.maps:
            raise ValueError("a counterexample must carry its witness maps")

    def verify(self) -> bool:
        """Replay the witness from scratch; exhaustions verify trivially."""
        if self.status != COUNTEREXAMPLE:
            return True
        spec = ASSERTIONS[self.assertion]
        return spec.hypothesis(self.space, self.maps, self.param) and not spec.conclusion(
            self.space, self.maps
        )


def small_connected_images(size_bound: int, one_dimensional_only: bool = False):
    """The deterministic scan universe: digital intervals [0, n-1]_Z,
    then rectangular grids in Z^2 under c_1 and c_2, sizes ascending."""
    images = [digital_interval(0, n - 1) for n in range(1, size_bound + 1)]
    if not one_dimensional_only:
        for a in range(2, size_bound + 1):
            for b in range(a, size_bound // a + 1):
                pts = [(i, j) for i in range(a) for j in range(b)]
                for adj in (C1, C2):
                    images.append(DigitalImage(pts, adj))
    return tuple(images)


_METRICS: tuple[MetricSpec, ...] = (L1, L2, SHORTEST_PATH)


def find_counterexample(
    assertion: str, size_bound: int = 3, param_grid=None
) -> SearchOutcome:
    """Scan every space/metric/parameter/map combination up to
    size_bound for a hypothesis-true, conclusion-false instance.

    Deterministic: the first witness in scan order is returned.  Raises
    EnumerationBudgetError if some space in range would exceed the map
    or pair enumeration budget, and ValueError for unknown assertions,
    out-of-range parameters, or size_bound > 5.
    """
    spec = ASSERTIONS.get(assertion)
    if spec is None:
        known = ", ".join(sorted(ASSERTIONS))
        raise ValueError(f"unknown assertion {assertion!r}; expected one of: {known}")
    if not 1 <= size_bound <= MAX_SIZE_BOUND:
        raise ValueError(f"size_bound must be in [1, {MAX_SIZE_BOUND}]")
    if spec.param is None:
        grid: tuple[Fraction | None, ...] = (None,)
    else:
        raw = DEFAULT_PARAM_GRID if param_grid is None else tuple(param_grid)
        grid = tuple(Fraction(v) for v in raw)
        for v in grid:
            if not 0 <= v < 1:
                raise ValueError(f"{spec.param} grid value {v} outside [0, 1)")
        if not grid:
            raise ValueError("parameter grid must not be empty")
    scanned = 0
    hits = 0
    spaces = 0
    for img in small_connected_images(size_bound, spec.one_dimensional_only):
        n = len(img)
        if spec.arity == 1 and n**n > MAP_ENUM_BUDGET:
            raise EnumerationBudgetError(f"{n}-point space exceeds the map budget")
        if spec.arity == 2 and (n**n) ** 2 > PAIR_ENUM_BUDGET:
            raise EnumerationBudgetError(f"{n}-point space exceeds the pair budget")
        for metric in _METRICS:
            space = DigitalMetricSpace(img, metric)
            spaces += 1
            for value in grid:
                if spec.arity == 1:
                    candidates = ((f,) for f in enumerate_selfmaps(img))
                else:
                    candidates = enumerate_map_pairs(img)
                for maps in candidates:
                    scanned += 1
                    if not spec.hypothesis(space, maps, value):
                        continue
                    hits += 1
                    if not spec.conclusion(space, maps):
                        return SearchOutcome(
                            assertion,
                            COUNTEREXAMPLE,
                            size_bound,
                            tuple(v for v in grid if v is not None),
                            space=space,
                            maps=tuple(maps),
                            param=value,
                            stats={
                                "instances_scanned": scanned,
                                "hypothesis_hits": hits,
                                "space_metric_combinations": spaces,
                            },
                        )
    return SearchOutcome(
        assertion,
        EXHAUSTED,
        size_bound,
        tuple(v for v in grid if v is not None),
        stats={
            "instances_scanned": scanned,
            "hypothesis_hits": hits,
            "space_metric_combinations": spaces,
        },
    )


# --------------------------------------------------------------------
# The curated verification suite.


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    passed: bool
    evidence: dict


@dataclass(frozen=True)
class SuiteReport:
    entries: tuple[SuiteEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def as_document(self) -> dict:
        return {
            "report": "verification-suite",
            "passed": self.passed,
            "entries": [
                {"name": e.name, "passed": e.passed, "evidence": e.evidence}
                for e in self.entries
            ],
        }

    def render_text(self) -> str:
        lines = []
        for e in self.entries:
            lines.append(f"{'PASS' if e.passed else 'FAIL'}  {e.name}")
            for key in sorted(e.evidence):
                lines.append(f"      {key}: {e.evidence[key]}")
        lines.append(
            f"{'PASS' if self.passed else 'FAIL'}  overall "
            f"({sum(1 for e in self.entries if e.passed)}/{len(self.entries)} entries)"
        )
        return "\n".join(lines)


def _suite_contraction() -> SuiteEntry:
    counts = {"confirmed": 0, "hypothesis_failed": 0, "refuted": 0}
    for n in (3, 4):
        img = digital_interval(0, n - 1)
        for metric in _METRICS:
            space = DigitalMetricSpace(img, metric)
            for f in enumerate_selfmaps(img):
                rep = fixpoint.banach_verify(space, f)
                if rep.conclusion == fixpoint.CONFIRMS:
                    counts["confirmed"] += 1
                elif rep.conclusion == fixpoint.HYPOTHESIS_FAILS:
                    counts["hypothesis_failed"] += 1
                else:
                    counts["refuted"] += 1
    return SuiteEntry("contraction-theorem-exhaustive", counts["refuted"] == 0, counts)


_KANNAN_GRID = tuple(
    (a, b)
    for a in (Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(3, 8))
    for b in (Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(3, 8))
    if a + b < Fraction(1, 2)
)


def _suite_two_coefficient() -> SuiteEntry:
    counts = {"confirmed": 0, "hypothesis_failed": 0, "refuted": 0}
    for n in (3, 4):
        img = digital_interval(0, n - 1)
        for metric in _METRICS:
            space = DigitalMetricSpace(img, metric)
            for f in enumerate_selfmaps(img):
                for a, b in _KANNAN_GRID:
                    rep = fixpoint.kannan_verify(space, f, a, b)
                    if rep.conclusion == fixpoint.CONFIRMS:
                        counts["confirmed"] += 1
                    elif rep.conclusion == fixpoint.HYPOTHESIS_FAILS:
                        counts["hypothesis_failed"] += 1
                    else:
                        counts["refuted"] += 1
    return SuiteEntry("two-coefficient-theorem-exhaustive", counts["refuted"] == 0, counts)


def _probe_entry(name: str, assertion: str) -> SuiteEntry:
    outcome = find_counterexample(assertion, size_bound=3)
    evidence = {"status": outcome.status, **outcome.stats}
    if outcome.status == COUNTEREXAMPLE:
        evidence["space"] = outcome.space.describe()
        evidence["maps"] = [str(m) for m in outcome.maps]
        if outcome.param is not None:
            evidence["param"] = str(outcome.param)
    return SuiteEntry(name, outcome.verify(), evidence)


def _suite_affine_counterexample() -> SuiteEntry:
    h = mapkit.AffineMapZ(0, 0)
    g = mapkit.AffineMapZ(1, 1)
    domination = mapkit.affine_dominates(h, g, Fraction(1, 2))
    fix_g = mapkit.affine_analyze(g)
    identity_fails = not mapkit.affine_dominates(
        mapkit.AffineMapZ(1, 0), mapkit.AffineMapZ(1, 0), Fraction(1, 2)
    ).dominates
    ok = (
        domination.dominates
        and domination.range_included
        and fix_g.kind == "none"
        and identity_fails
    )
    return SuiteEntry(
        "affine-domination-counterexample",
        ok,
        {
            "dominates": domination.dominates,
            "range_included": domination.range_included,
            "fixed_points_of_dominating_map": fix_g.kind,
        },
    )


def _suite_compatibility() -> SuiteEntry:
    img = digital_interval(0, 1)
    space = DigitalMetricSpace(img, L1)
    s = SelfMap(img, ((1,), (1,)))
    t = SelfMap(img, ((1,), (0,)))
    broken = contracts.compatible(space, s, t)
    trivial = contracts.compatible(space, t, t)
    ok = (not broken.holds) and broken.witness == ((0,),) and trivial.holds
    return SuiteEntry(
        "compatibility-coincidence-reduction",
        ok,
        {
            "noncompatible_witness": "0",
            "self_pair_compatible": trivial.holds,
        },
    )


def _suite_rational_ill_definedness() -> SuiteEntry:
    img = digital_interval(0, 1)
    space = DigitalMetricSpace(img, L1)
    ident = SelfMap.identity(img)
    rep = contracts.parv_rational_check(space, ident, ident)
    diagonal = tuple((p, p) for p in img.points)
    outcome = find_counterexample("rational-alternating-common-fix", size_bound=2)
    ok = (
        rep.ill_defined
        and rep.undefined_pairs == diagonal
        and outcome.status == COUNTEREXAMPLE
        and outcome.verify()
    )
    evidence = {
        "identity_pair_undefined_pairs": len(rep.undefined_pairs),
        "counterexample_status": outcome.status,
    }
    if outcome.status == COUNTEREXAMPLE:
        evidence["counterexample_maps"] = [str(m) for m in outcome.maps]
        evidence["counterexample_space"] = outcome.space.describe()
    return SuiteEntry("rational-condition-ill-definedness", ok, evidence)


def _suite_sum_bound_constancy() -> SuiteEntry:
    xi = Fraction(1, 2)
    holding = 0
    all_constant = True
    for n in (1, 2, 3):
        img = digital_interval(0, n - 1)
        for metric in _METRICS:
            space = DigitalMetricSpace(img, metric)
            for j, k in enumerate_map_pairs(img):
                rep = contracts.check_saluja(space, j, k, xi, minimal=False)
                if rep.condition.holds:
                    holding += 1
                    if not (j.is_constant and k.is_constant):
                        all_constant = False
    img = digital_interval(0, 1)
    space = DigitalMetricSpace(img, L2)
    j = SelfMap.constant(img, 0)
    k = SelfMap.constant(img, 1)
    constructed = contracts.check_saluja(space, j, k, xi)
    no_common = not _common_fixed_points(j, k)
    ok = all_constant and constructed.condition.holds and no_common
    return SuiteEntry(
        "sum-bound-forces-constancy",
        ok,
        {
            "pairs_satisfying_bound": holding,
            "all_satisfying_pairs_constant": all_constant,
            "constant_pair_common_fixed_points": 0 if no_common else 1,
        },
    )


def _suite_non_integer_rejection() -> SuiteEntry:
    img = digital_interval(0, 4)
    raw = [(t, t // 2 + 1 if t % 2 == 0 else t / 2 + 1) for t in range(5)]
    try:
        validate_selfmap(img, raw)
    except mapkit.MapValidationError as err:
        ok = err.kind == "non-lattice-value" and err.point == (1,)
        return SuiteEntry(
            "non-integer-map-rejection", ok, {"rejection": str(err), "kind": err.kind}
        )
    return SuiteEntry(
        "non-integer-map-rejection", False, {"rejection": "map was wrongly accepted"}
    )


def _suite_fpp() -> SuiteEntry:
    verdicts = {}
    ok = True
    for n in (1, 2, 3):
        img = digital_interval(0, n - 1)
        verdict = mapkit.has_fpp(img, restrict_continuous=True)
        verdicts[f"size_{n}"] = verdict.holds
        if verdict.holds != (n == 1):
            ok = False
        if n == 2 and (
            verdict.counterexample is None
            or verdict.counterexample.values != ((1,), (0,))
        ):
            ok = False
    return SuiteEntry("fpp-only-singletons", ok, verdicts)


def verify_paper_suite() -> SuiteReport:
    """Run every curated entry, in a fixed order, and collect verdicts.

    Deterministic: two runs produce identical reports.  Failures are
    report content, never exceptions.
    """
    return SuiteReport(
        (
            _suite_contraction(),
            _suite_two_coefficient(),
            _probe_entry("quasi-fixed-point-probe", "quasi-fixed-point"),
            _probe_entry("five-term-fixed-point-probe", "five-term-fixed-point"),
            _suite_affine_counterexample(),
            _suite_compatibility(),
            _suite_rational_ill_definedness(),
            _suite_sum_bound_constancy(),
            _suite_non_integer_rejection(),
            _suite_fpp(),
        )
    )
