"""Metrics on digital images and the spaces pairing the two.

Distance values keep exact semantics wherever the acceptance contract
needs them: l_1 and shortest-path distances are plain integers, l_2
distances are exact radicals (see :mod:`digitop.exact`), and only
general l_p with p outside {1, 2} falls back to high-precision floats
with a documented comparison tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

import mpmath

from .exact import ExactValue, compare, sqrt_exact
from .space import DigitalImage, Point, as_point, fmt_point, is_connected

#: Comparison tolerance for the inexact general-l_p regime.
LP_FLOAT_TOLERANCE = Fraction(1, 10**9)

_MP_DPS = 40


@dataclass(frozen=True)
class Lp:
    """The l_p metric on Z^n; p is an exact rational >= 1."""

    p: Fraction

    def __init__(self, p):
        p = Fraction(p)
        if p < 1:
            raise ValueError(f"l_p requires p >= 1, got {p}")
        object.__setattr__(self, "p", p)

    def __str__(self) -> str:
        return f"l{self.p}"


@dataclass(frozen=True)
class ShortestPath:
    """Hop-count distance along adjacency edges; needs a connected image."""

    def __str__(self) -> str:
        return "shortest_path"


MetricSpec = Union[Lp, ShortestPath]

L1 = Lp(1)
L2 = Lp(2)
SHORTEST_PATH = ShortestPath()


@dataclass(frozen=True)
class DiscretenessCertificate:
    """A positive separation bound: distinct points are >= epsilon apart."""

    epsilon: ExactValue


class DigitalMetricSpace:
    """A digital image together with a metric.

    Immutable after construction.  The all-pairs shortest-path table is
    memoized on first use; recomputation under a concurrent race is
    idempotent, so publication is safe without locking.
    """

    def __init__(self, image: DigitalImage, metric: MetricSpec = L1):
        if not isinstance(metric, (Lp, ShortestPath)):
            raise TypeError(f"unsupported metric spec: {metric!r}")
        if isinstance(metric, ShortestPath) and not is_connected(image):
            raise ValueError("the shortest-path metric needs a connected image")
        self._image = image
        self._metric = metric

    @property
    def image(self) -> DigitalImage:
        return self._image

    @property
    def metric(self) -> MetricSpec:
        return self._metric

    @property
    def points(self) -> tuple[Point, ...]:
        return self._image.points

    def __len__(self) -> int:
        return len(self._image)

    def __contains__(self, p) -> bool:
        return p in self._image

    @property
    def comparison_tolerance(self) -> Fraction | None:
        """None when verdicts are exact; a tolerance in the float regime."""
        if isinstance(self._metric, Lp) and self._metric.p not in (1, 2):
            return LP_FLOAT_TOLERANCE
        return None

    @cached_property
    def _sp_table(self) -> dict:
        table = {}
        for source in self._image.points:
            dist = {source: 0}
            frontier = [source]
            while frontier:
                nxt = []
                for p in frontier:
                    for q in self._image.neighbors(p):
                        if q not in dist:
                            dist[q] = dist[p] + 1
                            nxt.append(q)
                frontier = nxt
            table[source] = dist
        return table

    def distance(self, x, y):
        """Metric distance between two points of the space."""
        x = as_point(x)
        y = as_point(y)
        for p in (x, y):
            if p not in self._image:
                raise ValueError(f"point {fmt_point(p)} not in space")
        if isinstance(self._metric, ShortestPath):
            return self._sp_table[x][y]
        p = self._metric.p
        if p == 1:
            return sum(abs(a - b) for a, b in zip(x, y))
        if p == 2:
            return sqrt_exact(sum((a - b) ** 2 for a, b in zip(x, y)))
        with mpmath.workdps(_MP_DPS):
            exponent = mpmath.mpf(p.numerator) / p.denominator
            total = mpmath.fsum(
                mpmath.power(abs(a - b), exponent) for a, b in zip(x, y)
            )
            return mpmath.power(total, 1 / exponent)

    def describe(self) -> str:
        return f"{self._image.describe()}, metric {self._metric}"

    def __repr__(self) -> str:
        return f"DigitalMetricSpace({self.describe()})"


def discreteness_certificate(space: DigitalMetricSpace) -> DiscretenessCertificate:
    """Minimum pairwise distance over distinct points of a finite space.

    A singleton space has no pairs; by convention its certificate is 1,
    which every metric here vacuously satisfies.
    """
    pts = space.points
    if len(pts) == 1:
        return DiscretenessCertificate(1)
    tol = space.comparison_tolerance
    best = None
    for x, y in itertools.combinations(pts, 2):
        d = space.distance(x, y)
        if best is None or compare(d, best, tol) < 0:
            best = d
    return DiscretenessCertificate(best)


def hausdorff(space: DigitalMetricSpace, first: Iterable, second: Iterable):
    """Hausdorff distance between two nonempty subsets of the space.

    The maximum of the two directed distances, where the directed
    distance from A to B is max over a in A of min over b in B of d(a,b).
    """
    a_pts = sorted({as_point(p) for p in first})
    b_pts = sorted({as_point(p) for p in second})
    if not a_pts or not b_pts:
        raise ValueError("hausdorff distance needs nonempty subsets")
    for p in itertools.chain(a_pts, b_pts):
        if p not in space:
            raise ValueError(f"point {fmt_point(p)} not in space")
    tol = space.comparison_tolerance

    def directed(src, dst):
        worst = None
        for a in src:
            closest = None
            for b in dst:
                d = space.distance(a, b)
                if closest is None or compare(d, closest, tol) < 0:
                    closest = d
            if worst is None or compare(closest, worst, tol) > 0:
                worst = closest
        return worst

    forward = directed(a_pts, b_pts)
    backward = directed(b_pts, a_pts)
    return forward if compare(forward, backward, tol) >= 0 else backward
