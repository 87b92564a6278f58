"""
Piecewise-linear liftings of circle maps.

A lifting is stored by its breakpoint table on [0, 1] and extended to the
whole line by F(x + n) = F(x) + n * degree. Every operation here is exact.
"""
import logging
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Any, Iterable, Iterator, List, Optional, Sequence, Tuple

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import Arc, ArcSet, Interval
from ..core.circle import mod1
from ..core.rational import as_rational, format_rational
from ..errors import ComplexityBudgetExceeded, InvalidLifting

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction]
# lifted piece (x0, y0, x1, y1)
Piece = Tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class PLLifting:
    """Continuous piecewise-linear F: R -> R with F(x + 1) = F(x) + degree."""

    breakpoints: Tuple[Point, ...]

    def __post_init__(self):
        pts = tuple((as_rational(x, name="x"), as_rational(y, name="y")) for x, y in self.breakpoints)
        if len(pts) < 2:
            raise InvalidLifting("a lifting needs at least the breakpoints x = 0 and x = 1")
        if pts[0][0] != 0 or pts[-1][0] != 1:
            raise InvalidLifting("breakpoints must start at x = 0 and end at x = 1")
        for (xa, _), (xb, _) in zip(pts, pts[1:]):
            if xb <= xa:
                raise InvalidLifting(f"x must be strictly increasing, got {xa} then {xb}")
        if (pts[-1][1] - pts[0][1]).denominator != 1:
            raise InvalidLifting(f"degree y_k - y_0 = {pts[-1][1] - pts[0][1]} is not an integer")
        object.__setattr__(self, "breakpoints", pts)

    @classmethod
    def _trusted(cls, pts: Tuple[Point, ...]) -> "PLLifting":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "breakpoints", pts)
        return obj

    @classmethod
    def from_points(cls, points: Iterable[Sequence[Any]]) -> "PLLifting":
        return cls(tuple((x, y) for x, y in points))

    @classmethod
    def identity(cls) -> "PLLifting":
        return cls._trusted(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))))

    # -- table views -----------------------------------------------------

    @cached_property
    def xs(self) -> List[Fraction]:
        return [x for x, _ in self.breakpoints]

    @cached_property
    def ys(self) -> List[Fraction]:
        return [y for _, y in self.breakpoints]

    @cached_property
    def slopes(self) -> List[Fraction]:
        pts = self.breakpoints
        return [(yb - ya) / (xb - xa) for (xa, ya), (xb, yb) in zip(pts, pts[1:])]

    @property
    def degree(self) -> int:
        return int(self.breakpoints[-1][1] - self.breakpoints[0][1])

    @property
    def piece_count(self) -> int:
        return len(self.breakpoints) - 1

    @cached_property
    def value_range(self) -> Interval:
        """[min, max] of F over one period [0, 1]."""
        return min(self.ys), max(self.ys)

    # -- evaluation ------------------------------------------------------

    def eval(self, x: Any) -> Fraction:
        x = as_rational(x, name="x")
        n = math.floor(x)
        t = x - n
        i = bisect_right(self.xs, t) - 1
        xs, ys = self.xs, self.ys
        if xs[i] == t:
            value = ys[i]
        else:
            value = ys[i] + self.slopes[i] * (t - xs[i])
        return value + n * self.degree

    __call__ = eval

    def pieces(self, a: Fraction, b: Fraction) -> Iterator[Piece]:
        """Linear pieces of F restricted to [a, b], in order."""
        if a == b:
            v = self.eval(a)
            yield a, v, a, v
            return
        deg = self.degree
        xs, ys, slopes = self.xs, self.ys, self.slopes
        n = math.floor(a)
        while n < b:
            for i in range(len(slopes)):
                lo, hi = xs[i] + n, xs[i + 1] + n
                if hi <= a:
                    continue
                if lo >= b:
                    return
                x0, x1 = max(lo, a), min(hi, b)
                base = ys[i] + n * deg
                yield x0, base + slopes[i] * (x0 - lo), x1, base + slopes[i] * (x1 - lo)
            n += 1

    def lifted_breakpoints(self, a: Fraction, b: Fraction) -> List[Fraction]:
        """Breakpoints of the extended F lying strictly inside (a, b)."""
        out = []
        for n in range(math.floor(a), math.floor(b) + 1):
            for x in self.xs[:-1]:
                v = x + n
                if a < v < b:
                    out.append(v)
        return out

    def image_interval(self, a: Any, b: Any) -> Interval:
        """Exact [min F([a, b]), max F([a, b])]."""
        a, b = as_rational(a, name="a"), as_rational(b, name="b")
        if a > b:
            raise InvalidLifting(f"interval endpoints out of order: [{a}, {b}]")
        values = [self.eval(a), self.eval(b)]
        values.extend(self.eval(x) for x in self.lifted_breakpoints(a, b))
        return min(values), max(values)

    def solve_shift(self, k: Fraction, a: Fraction, b: Fraction) -> List[Interval]:
        """Solutions of F(x) = x + k inside [a, b], as points or segments."""
        out: List[Interval] = []
        for x0, y0, x1, y1 in self.pieces(a, b):
            h0, h1 = y0 - x0 - k, y1 - x1 - k
            if h0 == 0 and h1 == 0:
                out.append((x0, x1))
            elif h0 == 0:
                out.append((x0, x0))
            elif h1 == 0:
                out.append((x1, x1))
            elif (h0 < 0) != (h1 < 0):
                x = x0 + h0 * (x1 - x0) / (h0 - h1)
                out.append((x, x))
        return out

    # -- shape -----------------------------------------------------------

    @property
    def is_nondecreasing(self) -> bool:
        return all(s >= 0 for s in self.slopes)

    @property
    def is_nonincreasing(self) -> bool:
        return all(s <= 0 for s in self.slopes)

    @property
    def is_monotone(self) -> bool:
        return self.is_nondecreasing or self.is_nonincreasing

    @cached_property
    def lap_count(self) -> int:
        """Maximal monotone runs over one period (flat pieces join the run they follow)."""
        signs = [1 if s > 0 else -1 for s in self.slopes if s != 0]
        if not signs:
            return 1
        runs = 1 + sum(1 for a, b in zip(signs, signs[1:]) if a != b)
        if runs > 1 and signs[0] == signs[-1]:
            runs -= 1
        return runs

    def shift(self, m: Any) -> "PLLifting":
        """F + m; for integer m this lifts the same circle map."""
        m = as_rational(m, name="m")
        return PLLifting._trusted(tuple((x, y + m) for x, y in self.breakpoints))

    # -- sets ------------------------------------------------------------

    def preimage_arcset(self, target: ArcSet) -> ArcSet:
        """Exact f^{-1}(target) for the circle map this lifting covers."""
        if target.is_empty:
            return ArcSet.empty()
        if target.is_full:
            return ArcSet.full()
        xs, ys = self.xs, self.ys
        out: List[Interval] = []
        for arc in target.arcs:
            c, d = arc.start, arc.end
            for i in range(len(xs) - 1):
                xa, xb, ya, yb = xs[i], xs[i + 1], ys[i], ys[i + 1]
                lo, hi = min(ya, yb), max(ya, yb)
                for k in range(math.ceil(lo - d), math.floor(hi - c) + 1):
                    t_lo, t_hi = max(c + k, lo), min(d + k, hi)
                    if t_lo > t_hi:
                        continue
                    if ya == yb:
                        out.append((xa, xb))
                        continue
                    u = xa + (t_lo - ya) * (xb - xa) / (yb - ya)
                    v = xa + (t_hi - ya) * (xb - xa) / (yb - ya)
                    out.append((min(u, v), max(u, v)))
        return ArcSet.from_intervals(out)

    def image_arcset(self, source: ArcSet) -> ArcSet:
        """Exact f(source) as an ArcSet."""
        return ArcSet.from_lifted(self.image_interval(a.start, a.end) for a in source.arcs)

    def __str__(self) -> str:
        return " ".join(f"({format_rational(x)},{format_rational(y)})" for x, y in self.breakpoints)


def degree(F: PLLifting) -> int:
    return F.degree


def image_interval(F: PLLifting, a: Any, b: Any) -> Interval:
    return F.image_interval(a, b)


def _simplify(pts: List[Point]) -> Tuple[Point, ...]:
    kept = [pts[0]]
    for i in range(1, len(pts) - 1):
        (xa, ya), (xb, yb), (xc, yc) = kept[-1], pts[i], pts[i + 1]
        if (yb - ya) * (xc - xb) != (yc - yb) * (xb - xa):
            kept.append(pts[i])
    kept.append(pts[-1])
    return tuple(kept)


def compose(F: PLLifting, G: PLLifting, max_breakpoints: Optional[int] = None) -> PLLifting:
    """
    The lifting F o G.

    G's table is refined by the G-preimages of F's lifted breakpoints, then
    collinear breakpoints are dropped.

    Raises:
        ComplexityBudgetExceeded: more than ``max_breakpoints`` breakpoints
    """
    cap = DEFAULT_BUDGETS.max_breakpoints if max_breakpoints is None else max_breakpoints
    gx, gy = G.xs, G.ys
    pts: List[Point] = []
    for i in range(len(gx) - 1):
        x0, x1, y0, y1 = gx[i], gx[i + 1], gy[i], gy[i + 1]
        pts.append((x0, F.eval(y0)))
        if y0 != y1:
            lattice = F.lifted_breakpoints(min(y0, y1), max(y0, y1))
            if y1 < y0:
                lattice.reverse()
            scale = (x1 - x0) / (y1 - y0)
            pts.extend((x0 + (v - y0) * scale, F.eval(v)) for v in lattice)
        if len(pts) > cap:
            raise ComplexityBudgetExceeded(
                f"composition exceeds {cap} breakpoints", budget=cap,
                analysis={"pieces_of_inner": G.piece_count, "pieces_of_outer": F.piece_count})
    pts.append((gx[-1], F.eval(gy[-1])))
    out = _simplify(pts)
    if len(out) > cap:
        raise ComplexityBudgetExceeded(f"composition exceeds {cap} breakpoints", budget=cap)
    return PLLifting._trusted(out)


@lru_cache(maxsize=512)
def _iterate(F: PLLifting, n: int, cap: int) -> PLLifting:
    if n == 0:
        return PLLifting.identity()
    if n == 1:
        return F
    return compose(F, _iterate(F, n - 1, cap), cap)


def iterate(F: PLLifting, n: int, budgets: Optional[Budgets] = None) -> PLLifting:
    """F^n, with F^0 the identity lifting."""
    if n < 0:
        raise InvalidLifting(f"iterate needs n >= 0, got {n}")
    budgets = budgets or DEFAULT_BUDGETS
    G = _iterate(F, n, budgets.max_breakpoints)
    logger.debug("iterate: F^%d has %d pieces", n, G.piece_count)
    return G


def is_homeomorphism(F: PLLifting) -> bool:
    """Strictly monotone with |degree| = 1."""
    if abs(F.degree) != 1:
        return False
    return all(s > 0 for s in F.slopes) or all(s < 0 for s in F.slopes)


@lru_cache(maxsize=4096)
def _pullback(F: PLLifting, t: int, target: ArcSet, cap: int) -> ArcSet:
    return _iterate(F, t, cap).preimage_arcset(target)


@dataclass(frozen=True)
class CircleMapPL:
    """The circle map covered by a lifting; liftings differing by an integer are identified."""

    lifting: PLLifting
    name: str = field(default="", compare=False)

    def __post_init__(self):
        y0 = self.lifting.breakpoints[0][1]
        if not 0 <= y0 < 1:
            object.__setattr__(self, "lifting", self.lifting.shift(-math.floor(y0)))

    @classmethod
    def from_points(cls, points: Iterable[Sequence[Any]], name: str = "") -> "CircleMapPL":
        return cls(PLLifting.from_points(points), name=name)

    @property
    def degree(self) -> int:
        return self.lifting.degree

    def __call__(self, x: Any) -> Fraction:
        return mod1(self.lifting.eval(x))

    @property
    def is_surjective(self) -> bool:
        lo, hi = self.lifting.value_range
        return self.degree != 0 or hi - lo >= 1

    @property
    def is_homeomorphism(self) -> bool:
        return is_homeomorphism(self.lifting)

    def power(self, k: int, budgets: Optional[Budgets] = None) -> "CircleMapPL":
        label = f"{self.name}^{k}" if self.name else ""
        return CircleMapPL(iterate(self.lifting, k, budgets), name=label)

    def image(self, source: ArcSet) -> ArcSet:
        return self.lifting.image_arcset(source)

    def image_arc(self, arc: Arc) -> ArcSet:
        return self.lifting.image_arcset(ArcSet.of(arc))

    def preimage(self, target: ArcSet) -> ArcSet:
        return self.lifting.preimage_arcset(target)

    def pullback(self, target: ArcSet, t: int, budgets: Optional[Budgets] = None) -> ArcSet:
        """f^{-t}(target), cached per (map, t, target)."""
        budgets = budgets or DEFAULT_BUDGETS
        return _pullback(self.lifting, t, target, budgets.max_breakpoints)

    def __str__(self) -> str:
        return self.name or str(self.lifting)


def preimage_arcset(f: CircleMapPL, target: ArcSet) -> ArcSet:
    return f.preimage(target)
