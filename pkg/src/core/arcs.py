"""
Closed circular arcs and normalized finite unions of arcs.

An ArcSet is kept in normal form: arcs sorted by start, pairwise disjoint,
no two touching, the full circle encoded as the single arc (0, 1). Zero-length
arcs are single points and are allowed so that exact solution sets (fixed
points, boundary contacts) stay representable.
"""
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..errors import DegenerateInput
from .circle import CirclePoint, mod1
from .rational import as_rational, format_rational

Interval = Tuple[Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class Arc:
    """Closed arc [start, start + length] mod 1; length 1 is the full circle."""

    start: Fraction
    length: Fraction

    def __post_init__(self):
        length = as_rational(self.length, name="length")
        if length < 0 or length > 1:
            raise DegenerateInput(f"arc length must lie in [0, 1], got {length}")
        start = ZERO if length == 1 else mod1(as_rational(self.start, name="start"))
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "length", length)

    @classmethod
    def full(cls) -> "Arc":
        return cls(ZERO, ONE)

    @classmethod
    def point(cls, x: Any) -> "Arc":
        return cls(CirclePoint.of(x).position, ZERO)

    @classmethod
    def between(cls, a: Any, b: Any) -> "Arc":
        """Counterclockwise arc from a to b (a point when a == b)."""
        a, b = CirclePoint.of(a).position, CirclePoint.of(b).position
        return cls(a, mod1(b - a))

    @classmethod
    def around(cls, center: Any, radius: Any) -> "Arc":
        """Closed ball of the circle metric."""
        c = CirclePoint.of(center).position
        r = as_rational(radius, name="radius")
        if r < 0:
            raise DegenerateInput("radius must be non-negative")
        if 2 * r >= 1:
            return cls.full()
        return cls(c - r, 2 * r)

    @classmethod
    def from_lift(cls, lo: Fraction, hi: Fraction) -> "Arc":
        """Projection of the real interval [lo, hi]."""
        if hi - lo >= 1:
            return cls.full()
        return cls(lo, hi - lo)

    @property
    def end(self) -> Fraction:
        """Lifted end point start + length (may exceed 1)."""
        return self.start + self.length

    @property
    def is_full(self) -> bool:
        return self.length == 1

    @property
    def is_point(self) -> bool:
        return self.length == 0

    @property
    def midpoint(self) -> Fraction:
        return mod1(self.start + self.length / 2)

    def contains(self, x: Any) -> bool:
        if self.is_full:
            return True
        return mod1(CirclePoint.of(x).position - self.start) <= self.length

    def shifted(self, t: Fraction) -> "Arc":
        return Arc(self.start + t, self.length)

    def to_set(self) -> "ArcSet":
        return ArcSet.of(self)

    def __str__(self) -> str:
        if self.is_full:
            return "S"
        return f"[{format_rational(self.start)}, {format_rational(self.end)}]"


def _split(arc: Arc) -> List[Interval]:
    lo, hi = arc.start, arc.end
    if hi <= 1:
        return [(lo, hi)]
    return [(lo, ONE), (ZERO, hi - 1)]


def _normalize(intervals: Iterable[Interval]) -> Tuple[Arc, ...]:
    items = sorted((ZERO, ZERO) if lo == 1 else (lo, hi) for lo, hi in intervals)
    merged: List[List[Fraction]] = []
    for lo, hi in items:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    if not merged:
        return ()
    if merged[0][0] == 0 and merged[-1][1] == 1:
        if len(merged) == 1:
            return (Arc.full(),)
        first, last = merged.pop(0), merged.pop()
        wrap = Arc(last[0], (1 - last[0]) + first[1])
        return tuple(Arc(lo, hi - lo) for lo, hi in merged) + (wrap,)
    return tuple(Arc(lo, hi - lo) for lo, hi in merged)


@dataclass(frozen=True)
class ArcSet:
    """A normalized finite union of closed arcs."""

    arcs: Tuple[Arc, ...] = ()

    @classmethod
    def of(cls, *arcs: Arc) -> "ArcSet":
        return cls.from_intervals(iv for arc in arcs for iv in _split(arc))

    @classmethod
    def from_intervals(cls, intervals: Iterable[Interval]) -> "ArcSet":
        """Normalize line intervals lying in [0, 1]."""
        return cls(_normalize(intervals))

    @classmethod
    def from_lifted(cls, intervals: Iterable[Interval]) -> "ArcSet":
        """Project arbitrary real intervals onto the circle."""
        return cls.of(*(Arc.from_lift(lo, hi) for lo, hi in intervals))

    @classmethod
    def empty(cls) -> "ArcSet":
        return cls(())

    @classmethod
    def full(cls) -> "ArcSet":
        return cls((Arc.full(),))

    @classmethod
    def points(cls, xs: Iterable[Any]) -> "ArcSet":
        return cls.of(*(Arc.point(x) for x in xs))

    # -- views -----------------------------------------------------------

    @cached_property
    def intervals(self) -> Tuple[Interval, ...]:
        """Sorted disjoint line intervals in [0, 1] covering the same set."""
        return tuple(sorted(iv for arc in self.arcs for iv in _split(arc)))

    @cached_property
    def _los(self) -> List[Fraction]:
        return [lo for lo, _ in self.intervals]

    @cached_property
    def _his(self) -> List[Fraction]:
        return [hi for _, hi in self.intervals]

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    @property
    def is_full(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0].is_full

    @cached_property
    def measure(self) -> Fraction:
        return sum((arc.length for arc in self.arcs), ZERO)

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    def __bool__(self) -> bool:
        return bool(self.arcs)

    def endpoints(self) -> List[Fraction]:
        out = set()
        for arc in self.arcs:
            if not arc.is_full:
                out.add(arc.start)
                out.add(mod1(arc.end))
        return sorted(out)

    def witness(self) -> Optional[Fraction]:
        """Midpoint of the lowest-start arc of positive length, else the first point."""
        for arc in self.arcs:
            if arc.length > 0:
                return arc.midpoint
        return self.arcs[0].start if self.arcs else None

    # -- algebra ---------------------------------------------------------

    def contains(self, x: Any) -> bool:
        p = CirclePoint.of(x).position
        i = bisect_right(self._los, p) - 1
        if i >= 0 and self._his[i] >= p:
            return True
        return p == 0 and bool(self.intervals) and self._his[-1] == 1

    def union(self, other: "ArcSet") -> "ArcSet":
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return ArcSet.from_intervals(self.intervals + other.intervals)

    def intersect(self, other: "ArcSet") -> "ArcSet":
        if self.is_empty or other.is_empty:
            return ArcSet.empty()
        if self.is_full:
            return other
        if other.is_full:
            return self
        small, large = (self, other) if len(self.intervals) <= len(other.intervals) else (other, self)
        out: List[Interval] = []
        his, los, ivs = large._his, large._los, large.intervals
        for lo, hi in small.intervals:
            j = bisect_left(his, lo)
            while j < len(ivs) and los[j] <= hi:
                a, b = max(lo, los[j]), min(hi, his[j])
                if a <= b:
                    out.append((a, b))
                j += 1
            # 0 and 1 are the same point of the circle
            if hi == 1 and los[0] == 0:
                out.append((ZERO, ZERO))
            if lo == 0 and his[-1] == 1:
                out.append((ZERO, ZERO))
        return ArcSet.from_intervals(out)

    def complement(self) -> "ArcSet":
        """Closure of the complement; points never change the result."""
        solid = [(lo, hi) for lo, hi in self.intervals if hi > lo]
        if not solid:
            return ArcSet.full()
        gaps: List[Interval] = []
        cursor = ZERO
        for lo, hi in solid:
            if lo > cursor:
                gaps.append((cursor, lo))
            cursor = max(cursor, hi)
        if cursor < 1:
            gaps.append((cursor, ONE))
        return ArcSet.from_intervals(gaps)

    def difference(self, other: "ArcSet") -> "ArcSet":
        """Closure of self minus other."""
        return self.intersect(other.complement())

    def issubset(self, other: "ArcSet") -> bool:
        return self.intersect(other) == self

    def solid(self) -> "ArcSet":
        """Drop the isolated points."""
        return ArcSet(tuple(arc for arc in self.arcs if arc.length > 0))

    def fatten(self, delta: Fraction) -> "ArcSet":
        if self.is_empty:
            return self
        return ArcSet.of(*(Arc(a.start - delta, min(ONE, a.length + 2 * delta)) for a in self.arcs))

    def shifted(self, t: Fraction) -> "ArcSet":
        return ArcSet.of(*(arc.shifted(t) for arc in self.arcs))

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        return " u ".join(str(a) for a in self.arcs)


def union_all(sets: Sequence[ArcSet]) -> ArcSet:
    return ArcSet.from_intervals(iv for s in sets for iv in s.intervals)
