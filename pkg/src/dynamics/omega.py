"""
Orbits, omega-limit approximation, cycles of periodic intervals, nested
period-doubling chains and separable / non-separable pairs.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import Arc, ArcSet
from ..core.circle import CirclePoint, mod1
from ..core.rational import as_rational, bit_size
from ..errors import ComplexityBudgetExceeded, DegenerateInput, PrecisionBudgetExceeded
from .lifting import CircleMapPL, iterate
from .periodic import _divisor_union, periodic_points, point_outside

logger = logging.getLogger(__name__)


def _step(f: CircleMapPL, x: Fraction, budgets: Budgets, trail: List[Fraction]) -> Fraction:
    v = f(x)
    if bit_size(v) > budgets.precision_bits:
        raise PrecisionBudgetExceeded(
            f"orbit point exceeds {budgets.precision_bits} bits after {len(trail) - 1} steps",
            budget=budgets.precision_bits, partial=[CirclePoint(p) for p in trail])
    return v


def orbit(f: CircleMapPL, x: Any, n: int, budgets: Optional[Budgets] = None) -> List[CirclePoint]:
    """(x, f(x), ..., f^n(x)) exactly."""
    budgets = budgets or DEFAULT_BUDGETS
    trail = [mod1(as_rational(x, name="x"))]
    for _ in range(n):
        trail.append(_step(f, trail[-1], budgets, trail))
    return [CirclePoint(p) for p in trail]


@dataclass(frozen=True)
class PeriodicOrbit:
    period: int
    cycle: Tuple[Fraction, ...]


@dataclass(frozen=True)
class InfiniteEvidence:
    note: str = ""


@dataclass
class OmegaApprox:
    tail_points: List[CirclePoint]
    cluster: ArcSet
    classification: Union[PeriodicOrbit, InfiniteEvidence]
    forward_invariant: bool

    @property
    def is_periodic(self) -> bool:
        return isinstance(self.classification, PeriodicOrbit)


def omega_approx(f: CircleMapPL, x: Any, burn_in: int, window: int, delta: Fraction,
                 budgets: Optional[Budgets] = None) -> OmegaApprox:
    """
    Approximate omega(x) from the orbit window after ``burn_in`` steps.

    PeriodicOrbit is declared only on an exact return inside the window.
    """
    budgets = budgets or DEFAULT_BUDGETS
    current = mod1(as_rational(x, name="x"))
    trail = [current]
    for _ in range(burn_in):
        current = _step(f, current, budgets, trail)
        trail.append(current)
    seen: Dict[Fraction, int] = {}
    tail: List[Fraction] = []
    classification: Union[PeriodicOrbit, InfiniteEvidence, None] = None
    for i in range(window + 1):
        if current in seen:
            cycle = tuple(tail[seen[current]:])
            classification = PeriodicOrbit(len(cycle), cycle)
            break
        seen[current] = i
        tail.append(current)
        if i < window:
            current = _step(f, current, budgets, tail)
    if isinstance(classification, PeriodicOrbit):
        cluster = ArcSet.points(classification.cycle).fatten(delta)
        forward = True
    else:
        cluster = ArcSet.points(tail).fatten(delta)
        forward = f.image(cluster).issubset(cluster.fatten(delta))
        fixed = periodic_points(f, 1, budgets)
        note = "converging-to-fixed" if fixed and fixed.fatten(delta).contains(tail[-1]) else ""
        classification = InfiniteEvidence(note)
    logger.debug("omega_approx: %s, cluster measure %s", classification, cluster.measure)
    return OmegaApprox([CirclePoint(p) for p in tail], cluster, classification, forward)


@dataclass(frozen=True)
class PeriodicIntervalCycle:
    """Closed arc J with f^period(J) = J and pairwise disjoint iterates f^i(J)."""

    base: Arc
    period: int
    iterates: Tuple[Arc, ...]

    def contains(self, x: Any) -> bool:
        return any(arc.contains(x) for arc in self.iterates)

    def iterate_containing(self, x: Any) -> Optional[Arc]:
        return next((arc for arc in self.iterates if arc.contains(x)), None)

    def union(self) -> ArcSet:
        return ArcSet.of(*self.iterates)


def _candidate_endpoints(f: CircleMapPL, horizon: int, budgets: Budgets) -> List[Fraction]:
    points = set()
    for j in range(1, horizon + 1):
        points.update(periodic_points(f, j, budgets).endpoints())
    if len(points) > budgets.candidate_cap:
        raise ComplexityBudgetExceeded(
            f"{len(points)} candidate endpoints exceed cap {budgets.candidate_cap}",
            budget=budgets.candidate_cap, analysis={"horizon": horizon})
    return sorted(points)


def _verify_cycle(f: CircleMapPL, J: Arc, m: int, G) -> Optional[PeriodicIntervalCycle]:
    if G.image_arcset(ArcSet.of(J)) != ArcSet.of(J):
        return None
    iterates = [J]
    for _ in range(m - 1):
        image = f.image_arc(iterates[-1])
        if len(image.arcs) != 1 or image.is_full:
            return None
        iterates.append(image.arcs[0])
    sets = [ArcSet.of(a) for a in iterates]
    for i in range(m):
        for j in range(i + 1, m):
            if not sets[i].intersect(sets[j]).is_empty:
                return None
    return PeriodicIntervalCycle(J, m, tuple(iterates))


def _dominated(a: PeriodicIntervalCycle, b: PeriodicIntervalCycle) -> bool:
    sets = [ArcSet.of(arc) for arc in b.iterates]
    return all(any(ArcSet.of(arc).issubset(s) for s in sets) for arc in a.iterates)


@lru_cache(maxsize=256)
def _cycles(f: CircleMapPL, m: int, horizon: int, budgets: Budgets) -> Tuple[PeriodicIntervalCycle, ...]:
    found: Dict[frozenset, PeriodicIntervalCycle] = {}
    if m == 1 and f.is_surjective:
        full = Arc.full()
        found[frozenset([full])] = PeriodicIntervalCycle(full, 1, (full,))
    points = _candidate_endpoints(f, horizon, budgets)
    G = iterate(f.lifting, m, budgets)
    images = {p: mod1(G.eval(p)) for p in points}
    for a in points:
        for b in points:
            if a == b:
                continue
            J = Arc.between(a, b)
            if not (J.contains(images[a]) and J.contains(images[b])):
                continue
            cycle = _verify_cycle(f, J, m, G)
            if cycle is not None:
                found.setdefault(frozenset(cycle.iterates), cycle)
    cycles = list(found.values())
    maximal = [c for c in cycles if not any(d is not c and _dominated(c, d) for d in cycles)]
    maximal.sort(key=lambda c: (c.base.start, c.base.length))
    logger.debug("periodic_interval_cycles: m=%d, %d verified, %d maximal", m, len(cycles), len(maximal))
    return tuple(maximal)


def periodic_interval_cycles(f: CircleMapPL, m: int, horizon: Optional[int] = None,
                             budgets: Optional[Budgets] = None) -> List[PeriodicIntervalCycle]:
    """
    Maximal verified cycles of periodic intervals of period m.

    Candidate endpoints are the periodic points of period <= horizon
    (default m). The full circle counts only for m = 1 and surjective f.
    """
    if m < 1:
        raise ValueError("period must be at least 1")
    budgets = budgets or DEFAULT_BUDGETS
    return list(_cycles(f, m, max(m, horizon or m), budgets))


def periodic_point_in_cycle(f: CircleMapPL, cycle: PeriodicIntervalCycle,
                            budgets: Optional[Budgets] = None) -> Optional[Fraction]:
    """A point of minimal period ``cycle.period`` inside the cycle's base."""
    cache: Dict[int, ArcSet] = {}
    inside = periodic_points(f, cycle.period, budgets).intersect(ArcSet.of(cycle.base))
    return point_outside(inside, _divisor_union(f, cycle.period, cache, budgets))


@dataclass
class NestedChain:
    """Cycles with periods k, 2k, 4k, ..., each nested in the previous one."""

    levels: List[PeriodicIntervalCycle]
    requested: int

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def periods(self) -> Tuple[int, ...]:
        return tuple(c.period for c in self.levels)


def _nests(inner: PeriodicIntervalCycle, outer: PeriodicIntervalCycle, x: Fraction) -> bool:
    hull = outer.union()
    if not inner.union().issubset(hull):
        return False
    a, b = inner.iterate_containing(x), outer.iterate_containing(x)
    return a is not None and b is not None and ArcSet.of(a).issubset(ArcSet.of(b))


def nested_chain(f: CircleMapPL, x: Any, depth: int, horizon: Optional[int] = None,
                 budgets: Optional[Budgets] = None) -> NestedChain:
    """
    Period-doubling ladder of cycles around x.

    The ladder starts at the least k >= 2 with a cycle containing x; period-1
    arcs are skipped since every invariant arc qualifies.
    """
    budgets = budgets or DEFAULT_BUDGETS
    x = mod1(as_rational(x, name="x"))
    horizon = horizon or budgets.extensibility_horizon
    levels: List[PeriodicIntervalCycle] = []
    for k in range(2, horizon + 1):
        hit = next((c for c in periodic_interval_cycles(f, k, horizon, budgets) if c.contains(x)), None)
        if hit is not None:
            levels.append(hit)
            break
    while levels and len(levels) < depth:
        m = 2 * levels[-1].period
        nxt = next((c for c in periodic_interval_cycles(f, m, max(horizon, m), budgets)
                    if c.contains(x) and _nests(c, levels[-1], x)), None)
        if nxt is None:
            break
        levels.append(nxt)
    logger.debug("nested_chain: periods %s", [c.period for c in levels])
    return NestedChain(levels[:depth], depth)


@dataclass(frozen=True)
class Separable:
    j1: Arc
    j2: Arc
    period1: int
    period2: int


@dataclass(frozen=True)
class NonSeparableEvidence:
    chain: NestedChain
    seed: Fraction


@dataclass(frozen=True)
class NotComparable:
    reason: str


SeparabilityVerdict = Union[Separable, NonSeparableEvidence, NotComparable]


def _shadow_tail(f: CircleMapPL, z: Fraction, budgets: Budgets) -> List[Fraction]:
    trail = [z]
    seen = {z: 0}
    try:
        for i in range(1, budgets.shadow_tail + 1):
            v = _step(f, trail[-1], budgets, trail)
            if v in seen:
                return trail[seen[v]:]
            seen[v] = i
            trail.append(v)
    except PrecisionBudgetExceeded:
        logger.debug("_shadow_tail: precision budget hit after %d steps", len(trail))
    return trail[len(trail) // 2:]


def _shadow_seed(f: CircleMapPL, x: Fraction, y: Fraction, budgets: Budgets) -> Optional[Fraction]:
    seeds = [x, y] + [b for b in f.lifting.xs[:-1] if b not in (x, y)]
    for z in seeds:
        near = ArcSet.points(_shadow_tail(f, z, budgets)).fatten(budgets.shadow_delta)
        if near.contains(x) and near.contains(y):
            return z
    return None


def separability_test(f: CircleMapPL, x: Any, y: Any, depth: int, horizon: Optional[int] = None,
                      budgets: Optional[Budgets] = None) -> SeparabilityVerdict:
    """
    Separable if disjoint periodic intervals hold x and y; NonSeparableEvidence
    if a depth-D chain holds both in one interval per level and one orbit
    tail shadows both; NotComparable otherwise.
    """
    budgets = budgets or DEFAULT_BUDGETS
    x, y = mod1(as_rational(x, name="x")), mod1(as_rational(y, name="y"))
    if x == y:
        raise DegenerateInput("separability needs two distinct points")
    horizon = horizon or budgets.extensibility_horizon
    around_x: List[Tuple[Arc, int]] = []
    around_y: List[Tuple[Arc, int]] = []
    for m in range(1, horizon + 1):
        for cycle in periodic_interval_cycles(f, m, horizon, budgets):
            for arc in cycle.iterates:
                if arc.contains(x):
                    around_x.append((arc, m))
                if arc.contains(y):
                    around_y.append((arc, m))
    for a, ma in around_x:
        for b, mb in around_y:
            if ArcSet.of(a).intersect(ArcSet.of(b)).is_empty:
                return Separable(a, b, ma, mb)
    if depth < 1:
        return NotComparable("depth 0 requested")
    chain = nested_chain(f, x, depth, horizon, budgets)
    if chain.depth < depth:
        return NotComparable(f"chain reached depth {chain.depth} of {depth}")
    if not all(level.iterate_containing(x).contains(y) for level in chain.levels):
        return NotComparable("chain separates the points")
    seed = _shadow_seed(f, x, y, budgets)
    if seed is None:
        return NotComparable("no orbit tail shadows both points")
    return NonSeparableEvidence(chain, seed)


def _kind(v: SeparabilityVerdict) -> str:
    return type(v).__name__


def ns_power_consistency(f: CircleMapPL, p: int, pairs: Sequence[Tuple[Any, Any]], depth: int,
                         horizon: Optional[int] = None, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
    """Verdicts for f and f^p side by side; Separable against NonSeparableEvidence is a conflict."""
    budgets = budgets or DEFAULT_BUDGETS
    horizon = horizon or budgets.extensibility_horizon
    fp = f.power(p, budgets)
    v2 = (p & -p).bit_length() - 1
    rows = []
    for x, y in pairs:
        base = separability_test(f, x, y, depth, horizon, budgets)
        powered = separability_test(fp, x, y, max(0, depth - v2), max(1, math.ceil(horizon / p)), budgets)
        kinds = {_kind(base), _kind(powered)}
        rows.append({"pair": (x, y), "f": _kind(base), "f^p": _kind(powered),
                     "conflict": kinds == {"Separable", "NonSeparableEvidence"}})
    return {"p": p, "rows": rows, "consistent": not any(r["conflict"] for r in rows)}
