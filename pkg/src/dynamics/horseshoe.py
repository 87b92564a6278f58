"""
Non-extensibility verdicts and horseshoe certificates.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import Arc, ArcSet, Interval
from .lifting import CircleMapPL, PLLifting, iterate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtensibleWitness:
    """|F^n([r, r+1])| >= |deg| + 1, with the exact image interval."""

    n: int
    r: Fraction
    interval: Interval

    @property
    def length(self) -> Fraction:
        return self.interval[1] - self.interval[0]


@dataclass(frozen=True)
class NotExtensibleUpTo:
    horizon: int


ExtensibilityVerdict = Union[ExtensibleWitness, NotExtensibleUpTo]


def is_extensible(F: PLLifting, horizon: int, budgets: Optional[Budgets] = None) -> ExtensibilityVerdict:
    """
    Search n <= horizon for a unit window stretched to length |deg| + 1.

    For fixed n the window length is convex in r between breakpoints of F^n,
    so trying r at those breakpoints is exact.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    threshold = abs(F.degree) + 1
    for n in range(1, horizon + 1):
        G = iterate(F, n, budgets)
        for r in G.xs[:-1]:
            lo, hi = G.image_interval(r, r + 1)
            if hi - lo >= threshold:
                logger.debug("is_extensible: witness n=%d r=%s length=%s", n, r, hi - lo)
                return ExtensibleWitness(n, r, (lo, hi))
    return NotExtensibleUpTo(horizon)


@dataclass(frozen=True)
class HorseshoeCertificate:
    """
    Arcs K1, K2 with disjoint interiors and sub-arcs K_ij of K_i with
    f^n(K_ij) = K_j, every image checked exactly.
    """

    n: int
    k1: Arc
    k2: Arc
    subarcs: Dict[Tuple[int, int], Arc] = field(default_factory=dict)

    def arcs(self) -> Tuple[Arc, Arc]:
        return self.k1, self.k2


def _unit_image_end(G: PLLifting, start: Fraction, stop: Fraction) -> Optional[Fraction]:
    """Least t in (start, stop] with |G([start, t])| = 1."""
    v = G.eval(start)
    lo = hi = v
    for x0, y0, x1, y1 in G.pieces(start, stop):
        if y1 == y0:
            continue
        if max(hi, y1) - min(lo, y1) >= 1:
            level = lo + 1 if y1 > y0 else hi - 1
            return x0 + (level - y0) * (x1 - x0) / (y1 - y0)
        lo, hi = min(lo, y1), max(hi, y1)
    return None


def _level_points(G: PLLifting, a: Fraction, b: Fraction, level: Fraction) -> List[Fraction]:
    out = []
    for x0, y0, x1, y1 in G.pieces(a, b):
        if y0 == y1:
            if y0 == level:
                out.extend((x0, x1))
        elif min(y0, y1) <= level <= max(y0, y1):
            out.append(x0 + (level - y0) * (x1 - x0) / (y1 - y0))
    return out


def _subarc_onto(G: PLLifting, a: Fraction, b: Fraction, target: Arc) -> Optional[Arc]:
    """A sub-arc [p, q] of [a, b] with G([p, q]) projecting exactly onto target."""
    lo, hi = G.image_interval(a, b)
    length = target.length
    for m in range(math.ceil(lo - target.start), math.floor(hi - target.start - length) + 1):
        c = target.start + m
        d = c + length
        marks = sorted([(x, 0) for x in _level_points(G, a, b, c)] + [(x, 1) for x in _level_points(G, a, b, d)])
        for (p, lp), (q, lq) in zip(marks, marks[1:]):
            if lp != lq and p < q and G.image_interval(p, q) == (c, d):
                return Arc(p, q - p)
    return None


def _certify(G: PLLifting, n: int, span1: Interval, span2: Interval) -> Optional[HorseshoeCertificate]:
    k1 = Arc.from_lift(*span1)
    k2 = Arc.from_lift(*span2)
    if k1.is_full or k2.is_full or k1.length == 0 or k2.length == 0:
        return None
    if ArcSet.of(k1).intersect(ArcSet.of(k2)).measure != 0:
        return None
    subarcs: Dict[Tuple[int, int], Arc] = {}
    for i, (a, b) in enumerate((span1, span2), start=1):
        for j, target in enumerate((k1, k2), start=1):
            sub = _subarc_onto(G, a, b, target)
            if sub is None:
                return None
            subarcs[(i, j)] = sub
    return HorseshoeCertificate(n, k1, k2, subarcs)


def _candidate_spans(G: PLLifting) -> List[Tuple[Interval, Interval]]:
    spans = []
    if G.degree == 0:
        lo, hi = G.value_range
        if hi - lo >= 1:
            x = G.xs[G.ys.index(lo)]
            top = max(G.image_interval(x, x + 1))
            y = next(v for v in sorted(G.lifted_breakpoints(x, x + 1) + [x + 1]) if G.eval(v) == top)
            spans.append(((x, y), (y, x + 1)))
        return spans
    for r in G.xs[:-1]:
        lo, hi = G.image_interval(r, r + 1)
        if hi - lo < 2:
            continue
        t1 = _unit_image_end(G, r, r + 1)
        t2 = _unit_image_end(G, t1, r + 1) if t1 is not None else None
        if t2 is not None:
            spans.append(((r, t1), (t1, t2)))
    return spans


def find_horseshoe(f: CircleMapPL, horizon: int,
                   budgets: Optional[Budgets] = None) -> Optional[HorseshoeCertificate]:
    """
    Search n <= horizon for an exactly verified horseshoe of f^n.

    Returns None when nothing is found; that is not a proof of zero entropy.
    """
    budgets = budgets or DEFAULT_BUDGETS
    for n in range(1, horizon + 1):
        G = iterate(f.lifting, n, budgets)
        for span1, span2 in _candidate_spans(G):
            cert = _certify(G, n, span1, span2)
            if cert is not None:
                logger.debug("find_horseshoe: certificate at n=%d K1=%s K2=%s", n, cert.k1, cert.k2)
                return cert
    logger.debug("find_horseshoe: none up to n=%d", horizon)
    return None


def verify_horseshoe(f: CircleMapPL, cert: HorseshoeCertificate, budgets: Optional[Budgets] = None) -> bool:
    """Re-check every image of a certificate from scratch."""
    G = iterate(f.lifting, cert.n, budgets)
    if ArcSet.of(cert.k1).intersect(ArcSet.of(cert.k2)).measure != 0:
        return False
    for (i, j), sub in cert.subarcs.items():
        outer = cert.k1 if i == 1 else cert.k2
        target = cert.k1 if j == 1 else cert.k2
        if not ArcSet.of(sub).issubset(ArcSet.of(outer)):
            return False
        if G.image_arcset(ArcSet.of(sub)) != ArcSet.of(target):
            return False
    return True
