"""
Periodic points and period sets, the P(f) = kS(n) structure check, the
invariant interval of a zero-entropy lifting and the lifted-periodic
correspondence.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import ArcSet, Interval, union_all
from ..errors import NoFixedPoint, NonStabilizing, NotZeroEntropy, WrongDegree
from .horseshoe import ExtensibleWitness, is_extensible
from .lifting import CircleMapPL, PLLifting, iterate
from .sharkovsky import TWO_INFINITY, SharkovskyNumber

logger = logging.getLogger(__name__)


def periodic_points(f: CircleMapPL, n: int, budgets: Optional[Budgets] = None) -> ArcSet:
    """Exact solution set of f^n(x) = x, i.e. F^n(x) - x integer on [0, 1)."""
    if n < 1:
        raise ValueError("period must be at least 1")
    G = iterate(f.lifting, n, budgets)
    out: List[Interval] = []
    xs, ys = G.xs, G.ys
    for i in range(len(xs) - 1):
        x0, x1 = xs[i], xs[i + 1]
        h0, h1 = ys[i] - x0, ys[i + 1] - x1
        if h0 == h1:
            if h0.denominator == 1:
                out.append((x0, x1))
            continue
        for k in range(math.ceil(min(h0, h1)), math.floor(max(h0, h1)) + 1):
            x = x0 + (k - h0) * (x1 - x0) / (h1 - h0)
            out.append((x, x))
    return ArcSet.from_intervals(out)


def _divisor_union(f: CircleMapPL, n: int, cache: Dict[int, ArcSet], budgets: Optional[Budgets]) -> ArcSet:
    parts = [_fix(f, d, cache, budgets) for d in range(1, n) if n % d == 0]
    return union_all(parts) if parts else ArcSet.empty()


def _fix(f: CircleMapPL, n: int, cache: Dict[int, ArcSet], budgets: Optional[Budgets]) -> ArcSet:
    if n not in cache:
        cache[n] = periodic_points(f, n, budgets)
    return cache[n]


def point_outside(candidates: ArcSet, excluded: ArcSet) -> Optional[Fraction]:
    """A point of ``candidates`` not lying in ``excluded``, if any."""
    for arc in candidates.arcs:
        if arc.length == 0:
            if not excluded.contains(arc.start):
                return arc.start
            continue
        for piece in ArcSet.of(arc).difference(excluded).solid().arcs:
            for share in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)):
                x = piece.start + piece.length * share
                if not excluded.contains(x):
                    return x - math.floor(x)
    return None


def minimal_period_points(f: CircleMapPL, n: int, budgets: Optional[Budgets] = None,
                          cache: Optional[Dict[int, ArcSet]] = None) -> ArcSet:
    """Closure of the points of minimal period n (may be empty)."""
    cache = {} if cache is None else cache
    fix_n = _fix(f, n, cache, budgets)
    lower = _divisor_union(f, n, cache, budgets)
    isolated = [a for a in fix_n.arcs if a.length == 0 and not lower.contains(a.start)]
    # difference() is a closure and keeps isolated points of lower period
    return fix_n.difference(lower).solid().union(ArcSet.of(*isolated))


def period_set(f: CircleMapPL, N: int, budgets: Optional[Budgets] = None) -> Set[int]:
    """Minimal periods n <= N that occur, computed exactly."""
    cache: Dict[int, ArcSet] = {}
    periods = set()
    for n in range(1, N + 1):
        fix_n = _fix(f, n, cache, budgets)
        if fix_n.is_empty:
            continue
        if point_outside(fix_n, _divisor_union(f, n, cache, budgets)) is not None:
            periods.add(n)
    logger.debug("period_set: %s up to %d", sorted(periods), N)
    return periods


@dataclass(frozen=True)
class PeriodStructure:
    """P(f) restricted to [1, N] equals {k*m : m in S(n), k*m <= N}."""

    k: int
    n: SharkovskyNumber
    periods: tuple
    saturated: bool = False


def check_period_structure(f: CircleMapPL, N: int, budgets: Optional[Budgets] = None) -> Optional[PeriodStructure]:
    """
    Fit the observed periods to kS(n) with n a power of two or 2^inf.

    Returns None when nothing fits (including an empty period set).
    """
    if abs(f.degree) > 1:
        logger.warning("check_period_structure: |deg| = %d > 1, the kS(n) form is not expected", abs(f.degree))
    periods = sorted(period_set(f, N, budgets))
    if not periods:
        return None
    k = periods[0]
    if any(p % k for p in periods):
        return None
    quotients = [p // k for p in periods]
    powers = [2 ** j for j in range(0, (N // k).bit_length())]
    if quotients != powers[:len(quotients)]:
        return None
    saturated = len(quotients) == len(powers) and len(powers) > 1
    n = TWO_INFINITY if saturated else SharkovskyNumber(quotients[-1])
    return PeriodStructure(k, n, tuple(periods), saturated)


@dataclass
class InvariantInterval:
    """A lifting F and I = [a, b] with F(I) inside I, plus the exact case checks."""

    lifting: PLLifting
    a: Fraction
    b: Fraction
    case: str
    checks: Dict[str, bool] = field(default_factory=dict)
    collapsed: bool = False

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    @property
    def verified(self) -> bool:
        return bool(self.checks) and all(self.checks.values())


LENGTH_CHECK = "1 <= b - a < 2"


def _length_ok(a: Fraction, b: Fraction) -> bool:
    return 1 <= b - a < 2


def _inside(F: PLLifting, a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> bool:
    lo, hi = F.image_interval(a, b)
    return c <= lo and hi <= d


def _stabilize(F: PLLifting, lo: Fraction, hi: Fraction, steps: int) -> Interval:
    for _ in range(steps):
        img_lo, img_hi = F.image_interval(lo, hi)
        new_lo, new_hi = min(lo, img_lo), max(hi, img_hi)
        if (new_lo, new_hi) == (lo, hi):
            return lo, hi
        lo, hi = new_lo, new_hi
    raise NonStabilizing(f"image hull did not stabilize within {steps} steps", steps=steps)


def invariant_interval(f: CircleMapPL, budgets: Optional[Budgets] = None) -> InvariantInterval:
    """
    Build a lifting F and interval I = [a, b], 1 <= b - a < 2, with F(I) inside I.

    Raises:
        WrongDegree: |deg| > 1
        NotZeroEntropy: an extensibility witness exists within the horizon
        NoFixedPoint: deg is +1 or -1 and f has no fixed point
        NonStabilizing: the image hull keeps growing past the budget
    """
    budgets = budgets or DEFAULT_BUDGETS
    F = f.lifting
    d = F.degree
    if abs(d) > 1:
        raise WrongDegree(f"invariant interval needs |deg| <= 1, got {d}")
    verdict = is_extensible(F, budgets.extensibility_horizon, budgets)
    if isinstance(verdict, ExtensibleWitness):
        logger.warning("invariant_interval: refused, extensible at n=%d", verdict.n)
        raise NotZeroEntropy(f"lifting is extensible at n={verdict.n}, r={verdict.r}", witness=verdict)

    if d == 0:
        a = F.value_range[0]
        b = a + 1
        lo, hi = F.image_interval(a, b)
        checks = {LENGTH_CHECK: _length_ok(a, b), "F(I) in I": a <= lo and hi <= b, "|F(I)| < 1": hi - lo < 1}
        return InvariantInterval(F, a, b, "Deg0", checks)

    fixed = periodic_points(f, 1, budgets)
    if fixed.is_empty:
        raise NoFixedPoint("f has no fixed point")
    x0 = fixed.arcs[0].start
    k = F.eval(x0) - x0
    F1 = F.shift(-k)
    if d == -1:
        F1 = F1.shift(1)
    a, b = _stabilize(F1, x0, x0 + 1, budgets.stabilization_steps)
    logger.debug("invariant_interval: deg %d, K = [%s, %s]", d, a, b)

    if b - a == 2:
        # the hull degenerates to two unit intervals; keep the left one
        if d == -1:
            F1 = F1.shift(-1)
        b = a + 1
        checks = {LENGTH_CHECK: _length_ok(a, b), "F(I) in I": _inside(F1, a, b, a, b)}
        return InvariantInterval(F1, a, b, "Deg1" if d == 1 else "DegMinus1", checks, collapsed=True)

    checks = {LENGTH_CHECK: _length_ok(a, b), "F(I) = I": F1.image_interval(a, b) == (a, b)}
    if d == 1:
        checks["F([a,b-1]) in [a,b-1]"] = _inside(F1, a, b - 1, a, b - 1)
        checks["F([a+1,b]) in [a+1,b]"] = _inside(F1, a + 1, b, a + 1, b)
        case = "Deg1"
    else:
        checks["F([a,b-1]) in [a+1,b]"] = _inside(F1, a, b - 1, a + 1, b)
        checks["F([a+1,b]) in [a,b-1]"] = _inside(F1, a + 1, b, a, b - 1)
        case = "DegMinus1"
    return InvariantInterval(F1, a, b, case, checks)


@dataclass
class PeriodicCorrespondence:
    """Projected periodic points of F on I against periodic points of f, both up to N."""

    N: int
    lifted: ArcSet
    circle: ArcSet
    only_lifted: List[str] = field(default_factory=list)
    only_circle: List[str] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.lifted == self.circle


def _not_covered(A: ArcSet, B: ArcSet) -> List[str]:
    return [str(arc) for arc in A.arcs if not ArcSet.of(arc).issubset(B)]


def lifted_periodic_correspondence(f: CircleMapPL, inv: InvariantInterval, N: int,
                                   budgets: Optional[Budgets] = None) -> PeriodicCorrespondence:
    """Compare e(Per(F restricted to I)) with Per(f), periods up to N, exactly."""
    lifted_parts: List[Interval] = []
    circle_parts: List[ArcSet] = []
    for n in range(1, N + 1):
        G = iterate(inv.lifting, n, budgets)
        lifted_parts.extend(G.solve_shift(Fraction(0), inv.a, inv.b))
        circle_parts.append(periodic_points(f, n, budgets))
    lifted = ArcSet.from_lifted(lifted_parts)
    circle = union_all(circle_parts)
    report = PeriodicCorrespondence(N, lifted, circle, _not_covered(lifted, circle), _not_covered(circle, lifted))
    if not report.equal:
        logger.warning("lifted_periodic_correspondence: mismatch %s / %s", report.only_lifted, report.only_circle)
    return report
