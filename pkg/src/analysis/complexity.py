"""
Cover-join counts, maximal pattern complexity, separated and spanning sets
along time sequences, and entropy growth.

All counts are exact integers on exact arc sets. Where a quantity is a
supremum (p*, s*) the value returned is the best found within the search
bounds and is flagged as a lower bound.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import Arc, ArcSet
from ..core.circle import circle_metric, mod1
from ..core.rational import as_rational
from ..dynamics.lifting import CircleMapPL, iterate
from ..errors import ComplexityBudgetExceeded, DegenerateInput, InputError
from .covers import Cover, lebesgue_number, min_subcover_count, partition_cover
from .growth import GrowthReport, attach_fit

logger = logging.getLogger(__name__)


# -- cover joins -----------------------------------------------------------

@lru_cache(maxsize=4096)
def _join_cells(f: CircleMapPL, cover: Cover, times: Tuple[int, ...], budgets: Budgets) -> Tuple[ArcSet, ...]:
    if not times:
        return (ArcSet.full(),)
    previous = _join_cells(f, cover, times[:-1], budgets)
    pulled = [f.pullback(e, times[-1], budgets) for e in cover.elements]
    cells: Dict[ArcSet, None] = {}
    for cell in previous:
        for p in pulled:
            # zero-measure pieces are always covered by the solid ones
            piece = cell.intersect(p).solid()
            if not piece.is_empty:
                cells.setdefault(piece, None)
    return tuple(cells)


def _times(t: Iterable[Any]) -> Tuple[int, ...]:
    out = []
    for v in t:
        if isinstance(v, bool) or int(v) != v or v < 0:
            raise InputError(f"times must be non-negative integers, got {v!r}")
        out.append(int(v))
    return tuple(sorted(set(out)))


def join_elements(f: CircleMapPL, cover: Cover, t: Iterable[Any], budgets: Optional[Budgets] = None) -> Cover:
    """The join of f^{-t_i}(cover) over the distinct times, empty and null cells dropped."""
    budgets = budgets or DEFAULT_BUDGETS
    return Cover(_join_cells(f, cover, _times(t), budgets))


def join_count(f: CircleMapPL, cover: Cover, t: Iterable[Any], budgets: Optional[Budgets] = None) -> int:
    """N of the join of f^{-t_i}(cover); repeats and order of the times do not matter."""
    budgets = budgets or DEFAULT_BUDGETS
    return min_subcover_count(join_elements(f, cover, t, budgets), budgets)


# -- maximal pattern complexity ----------------------------------------------

@dataclass
class PatternResult:
    """p*(n) restricted to tuples with entries in [0, T]."""

    n: int
    T: int
    value: int
    argmax: Tuple[int, ...]
    evaluated: int
    lower_bound: bool = True


class PatternSearch:
    """
    Exhaustive search over sorted time tuples with a shared join memo.

    Join counts depend only on the set of times; for surjective maps they
    are also shift invariant, so the memo key is normalized to start at 0
    and tuples are searched with t_1 = 0.
    """

    def __init__(self, f: CircleMapPL, cover: Cover, budgets: Optional[Budgets] = None):
        self.f = f
        self.cover = cover
        self.budgets = budgets or DEFAULT_BUDGETS
        self.shift_invariant = f.is_surjective
        self.memo: Dict[Tuple[int, ...], int] = {}

    def count(self, times: Sequence[int]) -> int:
        support = _times(times)
        if self.shift_invariant and support:
            support = tuple(t - support[0] for t in support)
        if support not in self.memo:
            self.memo[support] = join_count(self.f, self.cover, support, self.budgets)
        return self.memo[support]

    def _total(self, n: int, T: int) -> int:
        if self.shift_invariant:
            return math.comb(T + n - 1, n - 1)
        return math.comb(T + n, n)

    def search(self, n: int, T: int) -> PatternResult:
        """
        Max join count over 0 <= t_1 <= ... <= t_n <= T.

        Tuples are walked depth first in lexicographic order and the
        lexicographically smallest maximizing tuple is reported. A prefix
        is not extended when N(prefix) * N(cover)^k, with k times still to
        add, cannot beat the best value so far: a join of covers needs at
        most the product of their counts, and a pulled-back cover needs at
        most N(cover).

        Raises:
            InputError: n < 1 or T < n
            ComplexityBudgetExceeded: more tuples than ``tuple_cap``
        """
        if n < 1 or T < n:
            raise InputError(f"pattern search needs n >= 1 and T >= n, got n={n}, T={T}")
        total = self._total(n, T)
        if total > self.budgets.tuple_cap:
            raise ComplexityBudgetExceeded(
                f"{total} tuples exceed cap {self.budgets.tuple_cap}", budget=self.budgets.tuple_cap)
        ceiling = self.count((0,))
        best, argmax = -1, ()
        pruned = 0
        before = len(self.memo)

        def extend(prefix: Tuple[int, ...], k: int, bar) -> None:
            nonlocal best, argmax, pruned
            if k == 0:
                value = self.count(prefix)
                bar.update(1)
                if value > best:
                    best, argmax = value, prefix
                return
            for v in range(prefix[-1] if prefix else 0, T + 1):
                t = prefix + (v,)
                if k > 1 and self.count(t) * ceiling ** (k - 1) <= best:
                    skipped = math.comb(T - v + k - 1, k - 1)
                    pruned += skipped
                    bar.update(skipped)
                    continue
                extend(t, k - 1, bar)

        with tqdm(total=total, desc=f"p*({n})", disable=not self.budgets.progress) as bar:
            if self.shift_invariant:
                extend((0,), n - 1, bar)
            else:
                extend((), n, bar)
        logger.debug("pattern_complexity: n=%d T=%d value=%d at %s, %d of %d tuples pruned",
                     n, T, best, argmax, pruned, total)
        return PatternResult(n, T, best, argmax, len(self.memo) - before)


def pattern_complexity(f: CircleMapPL, cover: Cover, n: int, T: int,
                       budgets: Optional[Budgets] = None) -> PatternResult:
    return PatternSearch(f, cover, budgets).search(n, T)


def pattern_growth(f: CircleMapPL, cover: Cover, n_max: int, T: int,
                   budgets: Optional[Budgets] = None) -> GrowthReport:
    """p*(1..n_max) at time cap T, with the order fit when there are 4 or more rows."""
    search = PatternSearch(f, cover, budgets)
    report = GrowthReport([], lower_bound=True)
    for n in range(1, n_max + 1):
        result = search.search(n, T)
        report.values.append((n, result.value))
        report.witnesses[n] = result.argmax
    return attach_fit(report, budgets)


# -- separated and spanning sets ----------------------------------------------

def _sequence(A: Sequence[Any], n: int) -> Tuple[int, ...]:
    times = tuple(int(a) for a in A)
    if n < 1 or len(times) < n:
        raise InputError(f"need a time sequence of length >= n = {n}, got {len(times)}")
    times = times[:n]
    if times[0] < 0 or any(a >= b for a, b in zip(times, times[1:])):
        raise InputError(f"time sequence must be strictly increasing and non-negative: {times}")
    return times


def _candidates(f: CircleMapPL, times: Sequence[int], delta: Fraction, budgets: Budgets) -> List[Fraction]:
    count = math.ceil(1 / delta)
    points = {i * delta for i in range(count)}
    for t in set(times):
        points.update(mod1(x) for x in iterate(f.lifting, t, budgets).xs)
    if len(points) > budgets.candidate_cap:
        raise ComplexityBudgetExceeded(
            f"{len(points)} candidate points exceed cap {budgets.candidate_cap}",
            budget=budgets.candidate_cap, analysis={"delta": delta})
    return sorted(points)


def _color_order(P: int, adj: List[int]) -> Tuple[List[int], List[int]]:
    order, colors = [], []
    uncolored, color = P, 0
    while uncolored:
        color += 1
        q = uncolored
        while q:
            bit = q & -q
            v = bit.bit_length() - 1
            order.append(v)
            colors.append(color)
            uncolored &= ~bit
            q &= ~bit & ~adj[v]
    return order, colors


def max_clique(adj: List[int], node_budget: int) -> Tuple[List[int], bool]:
    """
    Maximum clique by branch-and-bound with a greedy-colouring bound.

    Returns the clique (vertex indices, ascending) and whether the search
    finished inside ``node_budget`` expansions.
    """
    best: List[int] = []
    nodes = 0
    finished = True

    def expand(R: List[int], P: int):
        nonlocal best, nodes, finished
        nodes += 1
        if nodes > node_budget:
            finished = False
            return
        order, colors = _color_order(P, adj)
        for v, c in zip(reversed(order), reversed(colors)):
            if len(R) + c <= len(best) or not finished:
                return
            R.append(v)
            rest = P & adj[v]
            if rest:
                expand(R, rest)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    if adj:
        expand([], (1 << len(adj)) - 1)
    return sorted(best), finished


@dataclass
class SeparatedResult:
    """Certified lower bound on s_A(n, eps): ``points`` are pairwise (A, n, eps)-separated."""

    value: int
    points: Tuple[Fraction, ...]
    times: Tuple[int, ...]
    epsilon: Fraction
    candidates: int
    exhaustive: bool


def separated_number(f: CircleMapPL, A: Sequence[Any], n: int, eps: Any, delta: Any = None,
                     budgets: Optional[Budgets] = None) -> SeparatedResult:
    """
    Largest (A, n, eps)-separated set among grid and breakpoint candidates.

    Candidates are the delta-grid (default eps/8) and the breakpoints of
    F^{a_i} for i <= n. Separation is checked exactly; the set is a maximum
    clique of the separation graph.
    """
    budgets = budgets or DEFAULT_BUDGETS
    times = _sequence(A, n)
    eps = as_rational(eps, name="epsilon")
    if eps <= 0:
        raise InputError("epsilon must be positive")
    delta = eps / 8 if delta is None else as_rational(delta, name="delta")
    points = _candidates(f, times, delta, budgets)
    maps = [iterate(f.lifting, t, budgets) for t in times]
    codes = [[mod1(G.eval(p)) for G in maps] for p in points]
    adj = [0] * len(points)
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if any(circle_metric(u, v) >= eps for u, v in zip(codes[i], codes[j])):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    clique, finished = max_clique(adj, budgets.tuple_cap)
    if not finished:
        logger.warning("separated_number: clique search stopped after %d nodes", budgets.tuple_cap)
    logger.debug("separated_number: A=%s eps=%s -> %d of %d candidates", times, eps, len(clique), len(points))
    return SeparatedResult(len(clique), tuple(points[i] for i in clique), times, eps, len(points), finished)


def _ball(f: CircleMapPL, maps, times: Sequence[int], center: Fraction, rho: Fraction,
          budgets: Budgets) -> ArcSet:
    ball = ArcSet.full()
    for G, t in zip(maps, times):
        target = ArcSet.of(Arc.around(mod1(G.eval(center)), rho))
        ball = ball.intersect(f.pullback(target, t, budgets))
    return ball


@dataclass
class SpanningResult:
    """An exact (A, n, eps)-spanning set; its size bounds r_A(n, eps) from above."""

    value: int
    points: Tuple[Fraction, ...]
    times: Tuple[int, ...]
    epsilon: Fraction
    verified: bool


def spanning_number(f: CircleMapPL, A: Sequence[Any], n: int, eps: Any, delta: Any = None,
                    budgets: Optional[Budgets] = None) -> SpanningResult:
    """
    Greedy spanning set from closed d_A-balls of radius just under eps.

    Each round takes the midpoint u of the first uncovered gap and adds the
    candidate whose ball holds u and covers the most new measure (lowest
    candidate on ties). Candidates are u itself plus the delta-grid when
    delta is given. The union of the balls is checked to be the circle.
    """
    budgets = budgets or DEFAULT_BUDGETS
    times = _sequence(A, n)
    eps = as_rational(eps, name="epsilon")
    if eps <= 0:
        raise InputError("epsilon must be positive")
    rho = eps - eps / 10 ** 6
    maps = [iterate(f.lifting, t, budgets) for t in times]
    pool: Dict[Fraction, ArcSet] = {}
    if delta is not None:
        for p in _candidates(f, times, as_rational(delta, name="delta"), budgets):
            pool[p] = _ball(f, maps, times, p, rho, budgets)

    covered = ArcSet.empty()
    chosen: List[Fraction] = []
    while not covered.is_full:
        if len(chosen) >= budgets.tuple_cap:
            raise ComplexityBudgetExceeded(
                f"spanning set passed {budgets.tuple_cap} points", budget=budgets.tuple_cap, partial=len(chosen))
        u = covered.complement().witness()
        own = _ball(f, maps, times, u, rho, budgets)
        pick, ball, gain = u, own, own.difference(covered).measure
        for p in sorted(pool):
            candidate = pool[p]
            if not candidate.contains(u):
                continue
            g = candidate.difference(covered).measure
            if g > gain or (g == gain and p < pick):
                pick, ball, gain = p, candidate, g
        chosen.append(pick)
        covered = covered.union(ball)
    logger.debug("spanning_number: A=%s eps=%s -> %d points", times, eps, len(chosen))
    return SpanningResult(len(chosen), tuple(chosen), times, eps, covered.is_full)


def _sequences(T: int, n: int) -> Iterable[Tuple[int, ...]]:
    return combinations(range(T + 1), n)


def sstar_bounded(f: CircleMapPL, n_max: int, eps: Any, T: int, delta: Any = None,
                  budgets: Optional[Budgets] = None) -> GrowthReport:
    """
    max_A s_A(n, eps) over strictly increasing A inside {0..T}, for n = 1..n_max.

    Sequences are spread over ``budgets.threads`` workers; the result keeps the
    largest value and the lexicographically least sequence attaining it.
    """
    budgets = budgets or DEFAULT_BUDGETS
    if n_max < 1 or T + 1 < n_max:
        raise InputError(f"sstar needs 1 <= n <= T + 1, got n={n_max}, T={T}")
    report = GrowthReport([], lower_bound=True)
    for n in range(1, n_max + 1):
        total = math.comb(T + 1, n)
        if total > budgets.tuple_cap:
            raise ComplexityBudgetExceeded(f"{total} sequences exceed cap {budgets.tuple_cap}",
                                           budget=budgets.tuple_cap, partial=report.values)
        seqs = list(_sequences(T, n))

        def run(A: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
            return separated_number(f, A, n, eps, delta, budgets).value, A

        with ThreadPoolExecutor(max_workers=max(1, budgets.threads)) as pool:
            results = list(tqdm(pool.map(run, seqs), total=total, desc=f"s*({n})",
                                disable=not budgets.progress))
        value, argmax = max(results, key=lambda r: (r[0], [-a for a in r[1]]))
        report.values.append((n, value))
        report.witnesses[n] = argmax
        logger.debug("sstar_bounded: n=%d value=%d at %s", n, value, argmax)
    return attach_fit(report, budgets)


# -- bounds and the sandwich ------------------------------------------------------

def homeomorphism_separated_bound(n: int, eps: Any) -> int:
    """n * (floor(1/eps) + 1): no homeomorphism has a larger (A, n, eps)-separated set."""
    eps = as_rational(eps, name="epsilon")
    return n * (math.floor(1 / eps) + 1)


def wandering_spanning_bound(n: int, eps: Any, k: int, N: int) -> int:
    """
    n * floor(2/eps) + n * k * N^k for maps without periodic points that are
    not homeomorphisms; k counts gaps longer than eps/2 and N > floor(1/eps).
    """
    eps = as_rational(eps, name="epsilon")
    if N <= math.floor(1 / eps):
        raise InputError(f"N must exceed floor(1/eps) = {math.floor(1 / eps)}, got {N}")
    return n * math.floor(2 / eps) + n * k * N ** k


def lebesgue_sandwich(f: CircleMapPL, cover: Cover, A: Sequence[Any], n: int, delta: Any = None,
                      budgets: Optional[Budgets] = None) -> Dict[str, Any]:
    """
    N(join of cover) <= spanning <= ... and separated <= N(join of V) at eps = L/2.

    L is the Lebesgue number of the cover, V the partition into
    floor(1/eps) + 1 arcs. Only the two certified inequalities are checked.
    """
    budgets = budgets or DEFAULT_BUDGETS
    times = _sequence(A, n)
    L = lebesgue_number(cover)
    if L <= 0:
        raise DegenerateInput("the cover has Lebesgue number 0")
    eps = L / 2
    finer = partition_cover(math.floor(1 / eps) + 1)
    join_u = join_count(f, cover, times, budgets)
    spanning = spanning_number(f, times, n, eps, None, budgets)
    separated = separated_number(f, times, n, eps, delta, budgets)
    join_v = join_count(f, finer, times, budgets)
    row = {
        "times": times,
        "lebesgue": L,
        "epsilon": eps,
        "join_cover": join_u,
        "spanning": spanning.value,
        "separated": separated.value,
        "join_finer": join_v,
        "lower_certified": join_u <= spanning.value,
        "upper_certified": separated.value <= join_v,
    }
    if not (row["lower_certified"] and row["upper_certified"]):
        logger.warning("lebesgue_sandwich: inequality failed %s", row)
    return row


# -- entropy -----------------------------------------------------------------------

def entropy_growth(f: CircleMapPL, cover: Cover, n_max: int, budgets: Optional[Budgets] = None) -> GrowthReport:
    """
    N(join of f^{-i}(cover), i = 1..n) for n = 1..n_max with rate log(count)/n.

    Joins are built incrementally through the prefix memo.
    """
    budgets = budgets or DEFAULT_BUDGETS
    if n_max < 1:
        raise InputError("entropy_growth needs n_max >= 1")
    report = GrowthReport([])
    for n in tqdm(range(1, n_max + 1), desc="entropy", disable=not budgets.progress):
        count = join_count(f, cover, range(1, n + 1), budgets)
        report.values.append((n, count))
        report.rates[n] = math.log(count) / n
    logger.debug("entropy_growth: %s", report.values)
    return attach_fit(report, budgets)
