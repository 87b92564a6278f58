"""
Rotation numbers of degree-one liftings.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.arcs import ArcSet
from ..core.circle import mod1
from ..core.rational import as_rational
from ..errors import InputError, PrecisionBudgetExceeded, WrongDegree
from .lifting import CircleMapPL, PLLifting, iterate
from .omega import omega_approx
from .periodic import period_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RotationEstimate:
    """
    Bounds on rho(F) from n iterates.

    For non-decreasing F the true value lies in [lower, upper]; otherwise the
    pair brackets per-point truncations only and ``convergent`` is False.
    """

    lower: Fraction
    upper: Fraction
    n_used: int
    exact: Optional[Fraction] = None
    convergent: bool = True

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def fractional(self) -> Optional[Fraction]:
        """{rho(F)}: the circle map's rotation number when the value is exact."""
        return None if self.exact is None else mod1(self.exact)


@dataclass(frozen=True)
class RationalRotation:
    """rho(F) = value certified by F^period(witness) = witness + value * period."""

    value: Fraction
    witness: Fraction
    period: int


def _require_degree_one(F: PLLifting):
    if F.degree != 1:
        raise WrongDegree(f"rotation numbers need degree 1, got {F.degree}")


def rotation_bounds(F: PLLifting, n: int, q_max: Optional[int] = None,
                    budgets: Optional[Budgets] = None) -> RotationEstimate:
    """
    Extremes of (F^n(x) - x)/n over the breakpoints of F^n.

    F^n - id is piecewise linear with those breakpoints, so the extremes over
    the whole line are attained there. Width is below 1/n for monotone F.
    """
    _require_degree_one(F)
    if n < 1:
        raise InputError("rotation_bounds needs n >= 1")
    G = iterate(F, n, budgets)
    values = [(y - x) / n for x, y in G.breakpoints]
    lower, upper = min(values), max(values)
    monotone = F.is_nondecreasing
    exact = lower if lower == upper and monotone else None
    if exact is None and monotone and q_max:
        found = exact_rational_rotation(F, q_max, budgets)
        if found is not None:
            exact = found.value
    logger.debug("rotation_bounds: n=%d [%s, %s] exact=%s", n, lower, upper, exact)
    return RotationEstimate(lower, upper, n, exact, convergent=monotone)


def exact_rational_rotation(F: PLLifting, q_max: int,
                            budgets: Optional[Budgets] = None) -> Optional[RationalRotation]:
    """
    Smallest q <= q_max with a solution of F^q(x) = x + p.

    None means no periodic point of period <= q_max, not irrationality.
    """
    _require_degree_one(F)
    if not F.is_nondecreasing:
        raise InputError("exact_rational_rotation needs a non-decreasing lifting")
    for q in range(1, q_max + 1):
        G = iterate(F, q, budgets)
        offsets = [y - x for x, y in G.breakpoints]
        for p in range(math.ceil(min(offsets)), math.floor(max(offsets)) + 1):
            sols = G.solve_shift(Fraction(p), Fraction(0), Fraction(1))
            if sols:
                return RationalRotation(Fraction(p, q), mod1(sols[0][0]), q)
    return None


def rotation_point_spread(F: PLLifting, xs: Iterable[Any], n: int, budgets: Optional[Budgets] = None) -> Fraction:
    """Largest gap between (F^n(x) - x)/n across the given start points."""
    G = iterate(F, n, budgets)
    values = [(G.eval(x) - as_rational(x)) / n for x in xs]
    return max(values) - min(values) if values else Fraction(0)


def classify_no_periodic_point_map(f: CircleMapPL, horizon: int, samples: int = 10 ** 4,
                                   delta: Fraction = Fraction(1, 100),
                                   budgets: Optional[Budgets] = None) -> Dict[str, Any]:
    """
    Evidence report: has-periodic-points, transitive-like or Denjoy-like.

    Without periods up to ``horizon`` the orbit of 0 is fattened by delta;
    a covered measure of at least 99/100 reads as transitive-like.
    """
    budgets = budgets or DEFAULT_BUDGETS
    periods = period_set(f, horizon, budgets)
    if periods:
        return {"label": "has-periodic-points", "periods": sorted(periods), "evidence": True}
    try:
        approx = omega_approx(f, Fraction(0), 0, samples, delta, budgets)
        cluster = approx.cluster
    except PrecisionBudgetExceeded as e:
        logger.warning("classify_no_periodic_point_map: orbit truncated at %d points", len(e.partial or []))
        cluster = ArcSet.points(p.position for p in e.partial or [Fraction(0)]).fatten(delta)
    label = "transitive-like" if cluster.measure >= Fraction(99, 100) else "Denjoy-like"
    return {"label": label, "periods": [], "cluster_measure": cluster.measure, "evidence": True}
