"""
Named verification suites run by ``main.py verify --lemma <name>``.
"""
import logging
import math
import time
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import Arc
from ..core.rational import as_rational
from ..dynamics.horseshoe import find_horseshoe, verify_horseshoe
from ..dynamics.lifting import CircleMapPL
from ..dynamics.models import model_pairs
from ..dynamics.omega import ns_power_consistency, periodic_interval_cycles, periodic_point_in_cycle
from ..dynamics.periodic import invariant_interval, lifted_periodic_correspondence, periodic_points
from ..errors import InputError
from ..storage.map_files import load_map
from .complexity import entropy_growth, homeomorphism_separated_bound, sstar_bounded
from .covers import Cover, halves
from .independence import ArcPair, power_transform_check

logger = logging.getLogger(__name__)


class BaseSuite(ABC):
    """A named exact check on one circle map."""

    name = "base"
    description = ""

    @abstractmethod
    def run(self, f: CircleMapPL, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        """
        Run the checks.

        Returns:
            Result dict with at least a boolean ``passed``
        """
        pass

    def run_file(self, path: str, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        """Load a map file, run the suite and record the elapsed seconds."""
        f = load_map(path)
        start_time = time.perf_counter()
        result = self.run(f, budgets)
        result["elapsed"] = time.perf_counter() - start_time
        result["map"] = f.name
        return result


class InvariantIntervalSuite(BaseSuite):
    name = "invariant-interval"
    description = "case tag and exact inclusions of the invariant interval"

    def run(self, f: CircleMapPL, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        inv = invariant_interval(f, budgets)
        return {"case": inv.case, "a": inv.a, "b": inv.b, "checks": dict(inv.checks),
                "collapsed": inv.collapsed, "passed": inv.verified}


class PeriodCorrespondenceSuite(BaseSuite):
    name = "period-correspondence"
    description = "periodic points of the lifting on I project onto those of f"

    def __init__(self, N: int = 6):
        self.N = N

    def run(self, f: CircleMapPL, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        inv = invariant_interval(f, budgets)
        report = lifted_periodic_correspondence(f, inv, self.N, budgets)
        return {"case": inv.case, "N": self.N, "lifted": report.lifted, "circle": report.circle,
                "only_lifted": report.only_lifted, "only_circle": report.only_circle, "passed": report.equal}


class PowerTransformSuite(BaseSuite):
    name = "power-transform"
    description = "independence sets move between f and f^p in both directions"

    def __init__(self, p: int = 2, forward: Sequence[int] = (0, 1, 2, 3), backward: Sequence[int] = tuple(range(8)),
                 pair: Optional[ArcPair] = None):
        self.p = p
        self.forward = tuple(forward)
        self.backward = tuple(backward)
        self.pair = pair or ArcPair.from_arcs(Arc(0, Fraction(1, 2)), Arc(Fraction(1, 2), Fraction(1, 2)))

    def run(self, f: CircleMapPL, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        a = power_transform_check(f, self.p, self.pair, self.forward, budgets)
        b = power_transform_check(f, self.p, self.pair, self.backward, budgets)
        return {"p": self.p, "forward": a["a"], "backward": b["b"], "passed": a["a"]["passed"] and b["b"]["passed"]}


class SeparatedBoundSuite(BaseSuite):
    name = "separated-bound"
    description = "s* lower bounds of a homeomorphism stay below n(floor(1/eps) + 1)"

    def __init__(self, eps: Any = Fraction(1, 4), n_max: int = 4, T: int = 8):
        self.eps = as_rational(eps, name="epsilon")
        self.n_max = n_max
        self.T = T

    def run(self, f: CircleMapPL, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        if not f.is_homeomorphism:
            raise InputError("separated-bound applies to homeomorphisms only")
        report = sstar_bounded(f, self.n_max, self.eps, self.T, None, budgets)
        rows = [{"n": n, "sstar": value, "bound": homeomorphism_separated_bound(n, self.eps)}
                for n, value in report.values]
        return {"epsilon": self.eps, "T": self.T, "rows": rows,
                "passed": all(r["sstar"] <= r["bound"] for r in rows)}


class HorseshoeEntropySuite(BaseSuite):
    name = "horseshoe-entropy"
    description = "a horseshoe for f^n forces join growth of at least log 2 / n"

    def __init__(self, horizon: int = 2, n_max: int = 8, cover: Optional[Cover] = None,
                 tolerance: float = 0.05):
        self.horizon = horizon
        self.n_max = n_max
        self.cover = cover or halves()
        self.tolerance = tolerance

    def run(self, f: CircleMapPL, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        cert = find_horseshoe(f, self.horizon, budgets)
        if cert is None:
            return {"certificate": None, "vacuous": True, "passed": True}
        growth = entropy_growth(f, self.cover, self.n_max, budgets)
        rate = growth.rates[self.n_max]
        floor = math.log(2) / cert.n
        verified = verify_horseshoe(f, cert, budgets)
        return {"certificate": {"n": cert.n, "k1": cert.k1, "k2": cert.k2},
                "verified": verified, "rate": rate, "floor": floor,
                "vacuous": False, "passed": verified and rate >= floor - self.tolerance}


class IntervalPointsSuite(BaseSuite):
    name = "interval-points"
    description = "every proper cycle of periodic intervals holds a point of its period"

    def __init__(self, horizon: int = 4):
        self.horizon = horizon

    def run(self, f: CircleMapPL, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        rows = []
        for m in range(1, self.horizon + 1):
            for cycle in periodic_interval_cycles(f, m, self.horizon, budgets):
                if cycle.base.is_full:
                    continue
                point = periodic_point_in_cycle(f, cycle, budgets)
                exact = point is not None and periodic_points(f, m, budgets).contains(point)
                rows.append({"period": m, "base": cycle.base, "point": point, "ok": exact})
        return {"horizon": self.horizon, "rows": rows, "vacuous": not rows, "passed": all(r["ok"] for r in rows)}


class NonsepPowerSuite(BaseSuite):
    name = "nonsep-power"
    description = "separability verdicts for f and f^p never conflict"

    def __init__(self, p: int = 2, depth: int = 3, pairs: Optional[Sequence[Tuple[Any, Any]]] = None):
        self.p = p
        self.depth = depth
        if pairs is None:
            candidates = model_pairs(depth)
            pairs = [candidates["nonseparable"], candidates["separable"]]
        self.pairs = list(pairs)

    def run(self, f: CircleMapPL, budgets: Optional[Budgets] = None) -> Dict[str, Any]:
        report = ns_power_consistency(f, self.p, self.pairs, self.depth, None, budgets)
        return {"p": self.p, "depth": self.depth, "rows": report["rows"], "passed": report["consistent"]}


SUITES = {
    suite.name: suite
    for suite in (InvariantIntervalSuite, PeriodCorrespondenceSuite, PowerTransformSuite, SeparatedBoundSuite,
                  HorseshoeEntropySuite, IntervalPointsSuite, NonsepPowerSuite)
}


def get_suite(name: str, **options: Any) -> BaseSuite:
    if name not in SUITES:
        raise InputError(f"unknown lemma suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](**options)


def run_suite(name: str, f: CircleMapPL, budgets: Optional[Budgets] = None, **options: Any) -> Dict[str, Any]:
    budgets = budgets or DEFAULT_BUDGETS
    result = get_suite(name, **options).run(f, budgets)
    result["lemma"] = name
    if not result["passed"]:
        logger.warning("run_suite: %s failed on %s", name, f)
    return result
