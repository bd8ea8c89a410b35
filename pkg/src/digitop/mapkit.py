"""Self-maps of digital images, plus symbolic affine self-maps of Z.

Finite maps are dense lookup tables over the image's canonical point
order.  The affine form x -> p*x + q is the only infinite-domain map
supported; every question about it is decided arithmetically, never by
sampling, because sampling cannot establish facts like "no fixed point"
on all of Z.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .space import DigitalImage, Point, adjacent, as_point, fmt_point

#: Largest map-enumeration workload accepted (6 points: 6**6 tables).
MAP_ENUM_BUDGET = 6**6


class EnumerationBudgetError(RuntimeError):
    """Raised when an exhaustive scan would exceed the desk-scale budget."""


class MapValidationError(ValueError):
    """A raw map table failed validation; names the offending entry."""

    def __init__(self, kind: str, message: str, point=None, value=None):
        super().__init__(message)
        self.kind = kind
        self.point = point
        self.value = value


@dataclass(frozen=True)
class SelfMap:
    """A total map X -> X stored as values aligned with the point order."""

    domain: DigitalImage
    values: tuple[Point, ...]

    def __post_init__(self):
        if len(self.values) != len(self.domain.points):
            raise ValueError("value table length does not match the image")
        for v in self.values:
            if v not in self.domain:
                raise ValueError(f"map value {fmt_point(v)} outside the image")

    @classmethod
    def from_dict(cls, img: DigitalImage, mapping: dict) -> "SelfMap":
        table = {as_point(k): as_point(v) for k, v in mapping.items()}
        missing = [p for p in img.points if p not in table]
        if missing:
            raise MapValidationError(
                "partial",
                f"map is partial: no value for {fmt_point(missing[0])}",
                point=missing[0],
            )
        extra = [p for p in table if p not in img]
        if extra:
            raise MapValidationError(
                "unknown-point",
                f"map assigns a value to {fmt_point(extra[0])}, which is not in the image",
                point=extra[0],
            )
        return cls(img, tuple(table[p] for p in img.points))

    @classmethod
    def constant(cls, img: DigitalImage, value) -> "SelfMap":
        v = as_point(value)
        return cls(img, tuple(v for _ in img.points))

    @classmethod
    def identity(cls, img: DigitalImage) -> "SelfMap":
        return cls(img, img.points)

    def __call__(self, x) -> Point:
        return self.values[self.domain.index[as_point(x)]]

    def as_dict(self) -> dict:
        return dict(zip(self.domain.points, self.values))

    @cached_property
    def image_set(self) -> frozenset:
        return frozenset(self.values)

    @property
    def is_constant(self) -> bool:
        return len(self.image_set) == 1

    def __str__(self) -> str:
        pairs = ", ".join(
            f"{fmt_point(p)}->{fmt_point(v)}" for p, v in zip(self.domain.points, self.values)
        )
        return "{" + pairs + "}"


@dataclass(frozen=True)
class MapPair:
    """Two self-maps sharing one domain."""

    first: SelfMap
    second: SelfMap

    def __post_init__(self):
        if self.first.domain != self.second.domain:
            raise ValueError("a map pair must share its domain")


def compose(outer: SelfMap, inner: SelfMap) -> SelfMap:
    """The self-map x -> outer(inner(x))."""
    if outer.domain != inner.domain:
        raise ValueError("composition needs a shared domain")
    return SelfMap(outer.domain, tuple(outer(inner(x)) for x in outer.domain.points))


def _try_point(value):
    try:
        return as_point(value)
    except TypeError:
        return None


def validate_selfmap(img: DigitalImage, raw: Iterable) -> SelfMap:
    """Build a SelfMap from raw (input, output) pairs, or reject.

    Accepts iff the pairs form a total map on the image whose values are
    lattice points of the image.  Rejections name the offending entry;
    in particular a non-integer output (the classic flaw of defining
    t -> t/2 + 1 on nonnegative integers) is reported against its input
    point.
    """
    table: dict[Point, Point] = {}
    for key, value in raw:
        pk = _try_point(key)
        if pk is None or pk not in img:
            shown = fmt_point(pk) if pk is not None else repr(key)
            raise MapValidationError(
                "unknown-point",
                f"map input {shown} is not a point of the image",
                point=pk,
                value=value,
            )
        if pk in table:
            raise MapValidationError(
                "duplicate",
                f"duplicate assignment for {fmt_point(pk)}",
                point=pk,
                value=value,
            )
        pv = _try_point(value)
        if pv is None:
            raise MapValidationError(
                "non-lattice-value",
                f"map value {value!r} at {fmt_point(pk)} is not a lattice point",
                point=pk,
                value=value,
            )
        if pv not in img:
            raise MapValidationError(
                "value-outside-domain",
                f"map value {fmt_point(pv)} at {fmt_point(pk)} lies outside the image",
                point=pk,
                value=pv,
            )
        table[pk] = pv
    missing = [p for p in img.points if p not in table]
    if missing:
        raise MapValidationError(
            "partial",
            f"map is partial: no value for {fmt_point(missing[0])}",
            point=missing[0],
        )
    return SelfMap(img, tuple(table[p] for p in img.points))


def continuity_violation(f: SelfMap) -> tuple[Point, Point] | None:
    """First adjacent pair whose images are neither equal nor adjacent."""
    adj = f.domain.adjacency
    for x, y in f.domain.edges():
        fx, fy = f(x), f(y)
        if fx != fy and not adjacent(fx, fy, adj):
            return (x, y)
    return None


def is_continuous(f: SelfMap) -> bool:
    """Digital continuity via the edge characterization: adjacent points
    map to equal or adjacent points."""
    return continuity_violation(f) is None


def fixed_points(f: SelfMap) -> tuple[Point, ...]:
    return tuple(p for p, v in zip(f.domain.points, f.values) if p == v)


EVENTUALLY_CONSTANT = "eventually_constant"
EVENTUALLY_PERIODIC = "eventually_periodic"
TRUNCATED = "truncated"


@dataclass(frozen=True)
class OrbitReport:
    """An iteration orbit with its tail classification.

    kind is one of "eventually_constant" (the orbit settles at a fixed
    value from settle_index on), "eventually_periodic" (the tail cycles
    with the given period > 1), or "truncated" (the step budget ran out
    before a repetition).
    """

    points: tuple[Point, ...]
    kind: str
    settle_index: int | None = None
    value: Point | None = None
    period: int | None = None

    def __post_init__(self):
        if self.kind == EVENTUALLY_CONSTANT:
            if self.settle_index is None or self.value is None:
                raise ValueError("constant classification needs settle_index and value")
            if any(p != self.value for p in self.points[self.settle_index :]):
                raise ValueError("recorded orbit disagrees with its settle point")
        elif self.kind == EVENTUALLY_PERIODIC:
            if self.period is None or self.period < 2:
                raise ValueError("periodic classification needs period > 1")
        elif self.kind != TRUNCATED:
            raise ValueError(f"unknown orbit classification {self.kind!r}")

    @property
    def start(self) -> Point:
        return self.points[0]


def orbit(f: SelfMap, x0, max_steps: int | None = None) -> OrbitReport:
    """The Picard orbit x0, f(x0), f(f(x0)), ...

    Iterates until a point repeats or max_steps applications are spent.
    The default budget |X| + 1 makes truncation impossible (pigeonhole).
    """
    x = as_point(x0)
    if x not in f.domain:
        raise ValueError(f"starting point {fmt_point(x)} not in image")
    if max_steps is None:
        max_steps = len(f.domain) + 1
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    pts = [x]
    seen = {x: 0}
    for _ in range(max_steps):
        x = f(x)
        pts.append(x)
        if x in seen:
            first = seen[x]
            period = len(pts) - 1 - first
            if period == 1:
                return OrbitReport(
                    tuple(pts), EVENTUALLY_CONSTANT, settle_index=first, value=x
                )
            return OrbitReport(tuple(pts), EVENTUALLY_PERIODIC, period=period)
        seen[x] = len(pts) - 1
    return OrbitReport(tuple(pts), TRUNCATED)


def accumulation_points(report: OrbitReport) -> tuple[Point, ...]:
    """The set of points the orbit visits infinitely often, sorted."""
    if report.kind == EVENTUALLY_CONSTANT:
        return (report.value,)
    if report.kind == EVENTUALLY_PERIODIC:
        return tuple(sorted(set(report.points[-report.period :])))
    raise ValueError("a truncated orbit has no known accumulation points")


def enumerate_selfmaps(img: DigitalImage) -> Iterator[SelfMap]:
    """All total self-maps, lexicographic by value table.

    Raises EnumerationBudgetError when |X|^|X| exceeds the desk budget.
    """
    n = len(img)
    if n**n > MAP_ENUM_BUDGET:
        raise EnumerationBudgetError(
            f"{n}^{n} self-maps exceed the enumeration budget of {MAP_ENUM_BUDGET}"
        )
    for values in itertools.product(img.points, repeat=n):
        yield SelfMap(img, values)


class FppVerdict(NamedTuple):
    """Whether every (continuous) self-map has a fixed point."""

    holds: bool
    counterexample: SelfMap | None


def has_fpp(img: DigitalImage, restrict_continuous: bool = True) -> FppVerdict:
    """Decide the fixed-point property by exhausting all self-maps.

    With restrict_continuous the quantifier runs over digitally
    continuous maps only.  The witness, when one exists, is the
    lexicographically first fixed-point-free map.
    """
    for f in enumerate_selfmaps(img):
        if restrict_continuous and not is_continuous(f):
            continue
        if not fixed_points(f):
            return FppVerdict(False, f)
    return FppVerdict(True, None)


@dataclass(frozen=True)
class AffineMapZ:
    """The self-map x -> p*x + q of the integers."""

    p: int
    q: int

    def __post_init__(self):
        for field in (self.p, self.q):
            if not isinstance(field, int) or isinstance(field, bool):
                raise ValueError("affine coefficients must be integers")

    def __call__(self, x: int) -> int:
        return self.p * x + self.q

    def __str__(self) -> str:
        return f"x -> {self.p}*x + {self.q}"


@dataclass(frozen=True)
class AffineFixedPoints:
    """Fixed-point descriptor: kind is "none", "all", or "single"."""

    kind: str
    point: int | None = None


def affine_analyze(m: AffineMapZ) -> AffineFixedPoints:
    """Solve x = p*x + q over Z, symbolically."""
    if m.p == 1:
        return AffineFixedPoints("all") if m.q == 0 else AffineFixedPoints("none")
    solution = Fraction(m.q, 1 - m.p)
    if solution.denominator == 1:
        return AffineFixedPoints("single", int(solution))
    return AffineFixedPoints("none")


class AffineDominationReport(NamedTuple):
    dominates: bool
    range_included: bool


def affine_dominates(h: AffineMapZ, g: AffineMapZ, rho) -> AffineDominationReport:
    """Decide |H(x)-H(y)| <= rho*|G(x)-G(y)| for all integers, plus H(Z) <= G(Z).

    Affine maps scale the metric |x - y| by |slope|, so domination is
    the slope inequality |p_H| <= rho*|p_G|.  Range inclusion reduces to
    residue arithmetic on the slopes and intercepts.
    """
    rho = Fraction(rho)
    if not 0 <= rho < 1:
        raise ValueError(f"rho must satisfy 0 <= rho < 1, got {rho}")
    dominates = abs(h.p) <= rho * abs(g.p)
    if g.p == 0:
        included = h.p == 0 and h.q == g.q
    elif abs(g.p) == 1:
        included = True
    else:
        included = h.p % g.p == 0 and (h.q - g.q) % g.p == 0
    return AffineDominationReport(dominates, included)
