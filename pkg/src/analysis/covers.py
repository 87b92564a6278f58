"""
Finite covers of the circle by arc unions and exact minimum subcovers.
"""
import logging
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import Arc, ArcSet, union_all
from ..core.rational import as_rational, parse_rational
from ..errors import ComplexityBudgetExceeded, DegenerateInput, MapSyntaxError

logger = logging.getLogger(__name__)

DEFAULT_THICKENING = Fraction(1, 100)


@dataclass(frozen=True)
class Cover:
    """Arc-union elements whose union is the whole circle (checked on construction)."""

    elements: Tuple[ArcSet, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise DegenerateInput("a cover needs at least one element")
        if not union_all(elements).is_full:
            raise DegenerateInput("cover elements do not cover the circle")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def from_arcs(cls, arcs: Iterable[Arc]) -> "Cover":
        return cls(tuple(ArcSet.of(a) for a in arcs))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def single_arcs(self) -> bool:
        return all(len(e.arcs) == 1 for e in self.elements)


def halves(t: Any = DEFAULT_THICKENING) -> Cover:
    t = as_rational(t, name="thickening")
    return Cover.from_arcs([Arc(-t, Fraction(1, 2) + 2 * t), Arc(Fraction(1, 2) - t, Fraction(1, 2) + 2 * t)])


def quarters(t: Any = DEFAULT_THICKENING) -> Cover:
    t = as_rational(t, name="thickening")
    return Cover.from_arcs([Arc(Fraction(k, 4) - t, Fraction(1, 4) + 2 * t) for k in range(4)])


def uniform_cover(k: int, length: Any, offset: Any = 0) -> Cover:
    """k arcs of the given length starting at offset + i/k."""
    length, offset = as_rational(length, name="length"), as_rational(offset, name="offset")
    return Cover.from_arcs([Arc(offset + Fraction(i, k), length) for i in range(k)])


def partition_cover(k: int) -> Cover:
    """The closed arcs [i/k, (i+1)/k]."""
    return uniform_cover(k, Fraction(1, k))


def cover_from_text(text: str) -> Cover:
    """
    Parse ``arc <start> <length>`` lines; ``#`` starts a comment.

    Raises:
        MapSyntaxError: with the offending line number
    """
    arcs = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "arc" or len(parts) != 3:
            raise MapSyntaxError(f"expected 'arc <start> <length>', got {line!r}", line=number)
        try:
            arcs.append(Arc(parse_rational(parts[1], name="start"), parse_rational(parts[2], name="length")))
        except Exception as e:
            raise MapSyntaxError(str(e), line=number, column=raw.find(parts[1]) + 1) from e
    return Cover.from_arcs(arcs)


def lebesgue_number(cover: Cover) -> Fraction:
    """
    Largest L such that every arc of length L lies in a single element.

    Taken as the minimum, over arc starts b, of how far past b the best
    element holding a left-neighbourhood of b reaches.
    """
    if any(e.is_full for e in cover.elements):
        return Fraction(1)
    if not cover.single_arcs:
        raise DegenerateInput("the Lebesgue number is computed for single-arc covers only")
    arcs = [e.arcs[0] for e in cover.elements]
    best: Optional[Fraction] = None
    for b in sorted({a.start for a in arcs}):
        reach = Fraction(0)
        for a in arcs:
            # arcs holding (b - eps, b]: b - start lies in (0, length]
            offset = (b - a.start) % 1
            if 0 < offset <= a.length:
                reach = max(reach, a.length - offset)
        best = reach if best is None else min(best, reach)
    return best if best is not None else Fraction(0)


def _circular_greedy(arcs: List[Arc]) -> Tuple[int, ...]:
    """
    Minimum circular-arc cover.

    Every cover holds an arc through 0, so greedy extension from each such
    arc, always jumping to the reachable arc that ends furthest, is exact.
    """
    unrolled = sorted((a.start + s, a.start + s + a.length, i) for i, a in enumerate(arcs) for s in (-1, 0, 1))
    starts = [u[0] for u in unrolled]
    reach_end: List[Fraction] = []
    reach_idx: List[int] = []
    for _, end, i in unrolled:
        if reach_end and reach_end[-1] >= end:
            reach_end.append(reach_end[-1])
            reach_idx.append(reach_idx[-1])
        else:
            reach_end.append(end)
            reach_idx.append(i)

    best: Optional[Tuple[int, ...]] = None
    for s, first in enumerate(arcs):
        if not first.contains(0):
            continue
        chosen = {s}
        reach, goal = first.end, first.start + 1
        while reach < goal:
            j = bisect_right(starts, reach) - 1
            if j < 0 or reach_end[j] <= reach:
                break
            chosen.add(reach_idx[j])
            reach = reach_end[j]
        if reach >= goal and (best is None or len(chosen) < len(best)):
            best = tuple(sorted(chosen))
    if best is None:
        raise DegenerateInput("cover elements do not cover the circle")
    return best


def _atom_masks(elements: Sequence[ArcSet]) -> Tuple[List[int], int]:
    """
    Bitmask of the open atoms each element contains.

    Atoms are the gaps between consecutive cuts, where the cuts are 0 and
    every element endpoint; atom i is (cuts[i], cuts[i+1]) with cuts[size] = 1.
    """
    cuts = sorted({Fraction(0)} | {p for e in elements for p in e.endpoints()})
    size = len(cuts)
    masks = []
    for e in elements:
        mask = 0
        for lo, hi in e.intervals:
            if hi == lo:
                continue
            i = bisect_left(cuts, lo)
            j = size if hi == 1 else bisect_left(cuts, hi)
            mask |= ((1 << (j - i)) - 1) << i
        masks.append(mask)
    return masks, size


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reduce(masks: List[int], universe: int) -> Tuple[List[int], Dict[int, int], int]:
    """
    Take forced elements and drop dominated ones until neither applies.

    Returns the forced indices, the surviving {index: residual mask} and the
    residual universe.
    """
    forced: List[int] = []
    live = dict(enumerate(masks))
    residual = universe
    while residual:
        by_part: Dict[int, int] = {}
        for k, m in live.items():
            part = m & residual
            if part:
                by_part.setdefault(part, k)
        kept: Dict[int, int] = {}
        for part in sorted(by_part, key=_popcount, reverse=True):
            if not any(part & q == part for q in kept):
                kept[part] = by_part[part]
        live = {k: part for part, k in kept.items()}
        once = twice = 0
        for m in live.values():
            twice |= once & m
            once |= m
        if once != residual:
            raise DegenerateInput("cover elements do not cover the circle")
        unique = once & ~twice
        if not unique:
            break
        for k, m in list(live.items()):
            if m & unique:
                forced.append(k)
                residual &= ~m
                del live[k]
    return forced, live, residual


def _greedy_cover(masks: List[int], universe: int) -> List[int]:
    covered, chosen = 0, []
    while covered != universe:
        i = max(range(len(masks)), key=lambda k: _popcount(masks[k] & ~covered))
        chosen.append(i)
        covered |= masks[i]
    return chosen


def _branch_and_bound(masks: List[int], universe: int, cap: int) -> List[int]:
    best = _greedy_cover(masks, universe)
    if len(masks) > cap:
        raise ComplexityBudgetExceeded(
            f"{len(masks)} residual cover elements exceed cap {cap}", budget=cap, partial=len(best))

    def search(chosen: List[int], covered: int):
        nonlocal best
        if covered == universe:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + 1 >= len(best):
            return
        # branch on the uncovered atom with the fewest holders
        missing = universe & ~covered
        pivot, fewest = 0, None
        while missing:
            bit = missing & -missing
            count = sum(1 for m in masks if m & bit)
            if fewest is None or count < fewest:
                pivot, fewest = bit, count
            missing ^= bit
        for i, m in enumerate(masks):
            if m & pivot:
                chosen.append(i)
                search(chosen, covered | m)
                chosen.pop()

    search([], 0)
    return best


def min_subcover(cover: Cover, budgets: Optional[Budgets] = None) -> Tuple[int, ...]:
    """
    Indices of a minimum-cardinality subcover.

    Single-arc covers take the exact circular greedy. Otherwise the atoms
    cut out by all endpoints are set-covered: forced and dominated elements
    are settled first, then branch-and-bound runs on what is left.

    Raises:
        ComplexityBudgetExceeded: more residual elements than ``cover_element_cap``
    """
    budgets = budgets or DEFAULT_BUDGETS
    live = [i for i, e in enumerate(cover.elements) if e.measure > 0]
    for i in live:
        if cover.elements[i].is_full:
            return (i,)
    if all(len(cover.elements[i].arcs) == 1 for i in live):
        picked = _circular_greedy([cover.elements[i].arcs[0] for i in live])
        return tuple(sorted(live[k] for k in picked))

    masks, size = _atom_masks([cover.elements[i] for i in live])
    forced, rest, residual = _reduce(masks, (1 << size) - 1)
    chosen = list(forced)
    if residual:
        order = sorted(rest)
        picked = _branch_and_bound([rest[k] for k in order], residual, budgets.cover_element_cap)
        chosen.extend(order[c] for c in picked)
    logger.debug("min_subcover: %d elements, %d forced, %d searched", len(live), len(forced), len(rest))
    return tuple(sorted(live[k] for k in chosen))


def min_subcover_count(cover: Cover, budgets: Optional[Budgets] = None) -> int:
    """N(cover): the least number of elements that still cover the circle."""
    return len(min_subcover(cover, budgets))
