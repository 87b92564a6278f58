"""
Combinatorial independence of a pair of arc unions along times, IN-pair
scans over shrinking radii, and the power-transform checks.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import Arc, ArcSet
from ..core.circle import mod1
from ..core.rational import as_rational
from ..dynamics.lifting import CircleMapPL
from ..errors import ComplexityBudgetExceeded, DegenerateInput, InputError

logger = logging.getLogger(__name__)

Pattern = Tuple[int, ...]


@dataclass(frozen=True)
class ArcPair:
    """Two neighbourhoods U1, U2 of positive measure."""

    u1: ArcSet
    u2: ArcSet

    def __post_init__(self):
        if self.u1.measure == 0 or self.u2.measure == 0:
            raise DegenerateInput("both members of an arc pair need positive length")

    @classmethod
    def from_arcs(cls, a1: Arc, a2: Arc) -> "ArcPair":
        return cls(ArcSet.of(a1), ArcSet.of(a2))

    @classmethod
    def around(cls, x: Any, y: Any, r: Any) -> "ArcPair":
        return cls.from_arcs(Arc.around(x, r), Arc.around(y, r))

    def member(self, symbol: int) -> ArcSet:
        if symbol not in (1, 2):
            raise InputError(f"pattern symbols are 1 and 2, got {symbol!r}")
        return self.u1 if symbol == 1 else self.u2

    def pullback(self, f: CircleMapPL, r: int, budgets: Optional[Budgets] = None) -> "ArcPair":
        """(f^{-r}U1, f^{-r}U2)."""
        return ArcPair(f.pullback(self.u1, r, budgets), f.pullback(self.u2, r, budgets))


def _indices(I: Sequence[Any]) -> Tuple[int, ...]:
    out = sorted({int(i) for i in I})
    if out and out[0] < 0:
        raise InputError(f"independence indices must be non-negative, got {out}")
    return tuple(out)


def pattern_cell(f: CircleMapPL, pair: ArcPair, J: Sequence[int], S: Pattern,
                 budgets: Optional[Budgets] = None) -> ArcSet:
    """The exact set of x with f^{J[k]}(x) in U_{S[k]} for every k."""
    budgets = budgets or DEFAULT_BUDGETS
    if len(J) != len(S):
        raise InputError("index set and pattern differ in length")
    if len(J) > budgets.pattern_cap:
        raise ComplexityBudgetExceeded(f"|J| = {len(J)} exceeds pattern cap {budgets.pattern_cap}",
                                       budget=budgets.pattern_cap)
    cell = ArcSet.full()
    for i, s in zip(J, S):
        cell = cell.intersect(f.pullback(pair.member(s), int(i), budgets))
        if cell.is_empty:
            break
    return cell


def pattern_nonempty(f: CircleMapPL, pair: ArcPair, J: Sequence[int], S: Pattern,
                     budgets: Optional[Budgets] = None) -> Optional[Fraction]:
    """A witness point of the pattern cell (midpoint of its lowest solid arc) or None."""
    return pattern_cell(f, pair, J, S, budgets).witness()


@dataclass
class IndependenceWitness:
    """
    One witness point per full pattern on ``index_set``.

    ``failed`` holds the first empty pattern when the set is not independent.
    """

    index_set: Tuple[int, ...]
    independent: bool
    patterns_verified: int
    sample_points: Dict[Pattern, Fraction] = field(default_factory=dict)
    failed: Optional[Pattern] = None

    def __bool__(self) -> bool:
        return self.independent


def _refine(f: CircleMapPL, pair: ArcPair, cells: List[Tuple[Pattern, ArcSet]], i: int,
            budgets: Budgets) -> Tuple[Optional[List[Tuple[Pattern, ArcSet]]], Optional[Pattern]]:
    pulled = (f.pullback(pair.u1, i, budgets), f.pullback(pair.u2, i, budgets))
    out = []
    for pattern, cell in cells:
        for s, target in ((1, pulled[0]), (2, pulled[1])):
            piece = cell.intersect(target)
            if piece.is_empty:
                return None, pattern + (s,)
            out.append((pattern + (s,), piece))
    return out, None


def is_independence_set(f: CircleMapPL, pair: ArcPair, I: Sequence[Any],
                        budgets: Optional[Budgets] = None) -> IndependenceWitness:
    """
    Whether every full {1,2}-pattern on I has a non-empty cell.

    Cells are refined one index at a time, so a failing prefix stops the
    check early; full patterns suffice since sub-pattern cells contain them.
    """
    budgets = budgets or DEFAULT_BUDGETS
    index_set = _indices(I)
    if len(index_set) > budgets.pattern_cap:
        raise ComplexityBudgetExceeded(f"|I| = {len(index_set)} exceeds pattern cap {budgets.pattern_cap}",
                                       budget=budgets.pattern_cap)
    cells: List[Tuple[Pattern, ArcSet]] = [((), ArcSet.full())]
    for i in index_set:
        refined, failed = _refine(f, pair, cells, i, budgets)
        if refined is None:
            return IndependenceWitness(index_set, False, len(cells), failed=failed)
        cells = refined
    samples = {pattern: cell.witness() for pattern, cell in cells}
    return IndependenceWitness(index_set, True, len(cells), samples)


@dataclass
class MaxIndependence:
    witness: IndependenceWitness
    horizon: int
    cap_hit: bool
    nodes: int

    @property
    def size(self) -> int:
        return len(self.witness.index_set)


def max_independence(f: CircleMapPL, pair: ArcPair, T: int, m_cap: Optional[int] = None,
                     budgets: Optional[Budgets] = None) -> MaxIndependence:
    """
    Largest independence set inside {0..T}, searched depth first in lex order.

    Independence is hereditary, so increasing index lists are extended by the
    smallest unused index and abandoned at the first empty cell. A branch is
    cut when even taking every remaining index could not beat the best.
    Stops early once ``m_cap`` indices are found.
    """
    budgets = budgets or DEFAULT_BUDGETS
    m_cap = min(m_cap or budgets.pattern_cap, budgets.pattern_cap)
    if T < 0:
        raise InputError("horizon must be non-negative")
    best: Tuple[int, ...] = ()
    best_cells: List[Tuple[Pattern, ArcSet]] = [((), ArcSet.full())]
    nodes = 0

    def extend(chosen: Tuple[int, ...], cells: List[Tuple[Pattern, ArcSet]]):
        nonlocal best, best_cells, nodes
        if len(best) >= m_cap:
            return
        for i in range((chosen[-1] + 1) if chosen else 0, T + 1):
            if len(chosen) + (T - i + 1) <= len(best):
                return
            nodes += 1
            refined, _ = _refine(f, pair, cells, i, budgets)
            if refined is None:
                continue
            nxt = chosen + (i,)
            if len(nxt) > len(best):
                best, best_cells = nxt, refined
            extend(nxt, refined)
            if len(best) >= m_cap:
                return

    extend((), best_cells)
    samples = {pattern: cell.witness() for pattern, cell in best_cells} if best else {}
    witness = IndependenceWitness(best, True, len(best_cells) if best else 0, samples)
    logger.debug("max_independence: T=%d -> %s after %d nodes", T, best, nodes)
    return MaxIndependence(witness, T, len(best) >= m_cap, nodes)


@dataclass
class InPairEvidence:
    """Largest independence size per radius; the level is the smallest of them."""

    x: Fraction
    y: Fraction
    sizes: Dict[Fraction, int]
    witnesses: Dict[Fraction, Tuple[int, ...]]
    m_target: int
    horizon: int

    @property
    def level(self) -> int:
        return min(self.sizes.values()) if self.sizes else 0

    @property
    def consistent(self) -> bool:
        return self.level >= self.m_target


def in_pair_scan(f: CircleMapPL, x: Any, y: Any, radii: Optional[Sequence[Any]] = None, m_target: int = 3,
                 T: int = 12, budgets: Optional[Budgets] = None) -> InPairEvidence:
    """
    Run max_independence on the r-arcs around x and y for each radius.

    Raises:
        DegenerateInput: x and y are the same point of the circle
    """
    budgets = budgets or DEFAULT_BUDGETS
    x, y = mod1(as_rational(x, name="x")), mod1(as_rational(y, name="y"))
    if x == y:
        raise DegenerateInput("IN-pair scan needs two distinct points")
    radii = [as_rational(r, name="radius") for r in (radii or budgets.radii)]
    sizes: Dict[Fraction, int] = {}
    witnesses: Dict[Fraction, Tuple[int, ...]] = {}
    for r in radii:
        found = max_independence(f, ArcPair.around(x, y, r), T, None, budgets)
        sizes[r] = found.size
        witnesses[r] = found.witness.index_set
    evidence = InPairEvidence(x, y, sizes, witnesses, m_target, T)
    logger.debug("in_pair_scan: (%s, %s) sizes %s", x, y, sizes)
    return evidence


def power_transform_check(f: CircleMapPL, p: int, pair: ArcPair, I: Sequence[Any],
                          budgets: Optional[Budgets] = None) -> Dict[str, Any]:
    """
    Both directions of moving independence sets between f and f^p.

    (a) I independent for f^p  =>  p*I independent for f.
    (b) I independent for f  =>  for the largest residue class Q_r of I mod p
        (smallest r on ties), {(q - r)/p} is independent for f^p with the
        pair pulled back by f^r.

    A direction passes when its premise fails or its conclusion verifies.
    """
    budgets = budgets or DEFAULT_BUDGETS
    if p < 1:
        raise InputError("power must be at least 1")
    index_set = _indices(I)
    fp = f.power(p, budgets)

    premise_a = is_independence_set(fp, pair, index_set, budgets)
    scaled = tuple(p * i for i in index_set)
    conclusion_a = is_independence_set(f, pair, scaled, budgets) if premise_a else None
    a = {"premise": premise_a.independent, "scaled": scaled,
         "conclusion": None if conclusion_a is None else conclusion_a.independent,
         "failed": None if conclusion_a is None else conclusion_a.failed}
    a["passed"] = not premise_a.independent or bool(conclusion_a)

    premise_b = is_independence_set(f, pair, index_set, budgets)
    b: Dict[str, Any] = {"premise": premise_b.independent}
    if premise_b:
        classes = {r: [q for q in index_set if q % p == r] for r in range(p)}
        r = max(range(p), key=lambda k: (len(classes[k]), -k))
        reduced = tuple((q - r) // p for q in classes[r])
        conclusion_b = is_independence_set(fp, pair.pullback(f, r, budgets), reduced, budgets)
        b.update({"residue": r, "class": tuple(classes[r]), "reduced": reduced,
                  "conclusion": conclusion_b.independent, "failed": conclusion_b.failed,
                  "passed": conclusion_b.independent})
    else:
        b["passed"] = True
    report = {"p": p, "I": index_set, "a": a, "b": b, "passed": a["passed"] and b["passed"]}
    if not report["passed"]:
        logger.warning("power_transform_check: failed %s", report)
    return report
