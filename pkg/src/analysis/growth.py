"""
Growth tables and the polynomial-versus-exponential order fit.

The fit works in floating point through numpy; its outputs are evidence only
and the fitted exponent is handed back as a Farey rational.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.rational import to_rational
from ..errors import DegenerateInput, InputError

logger = logging.getLogger(__name__)

POLYNOMIAL = "PolynomialOrderEvidence"
SUPER_POLYNOMIAL = "SuperPolynomialEvidence"


@dataclass
class GrowthReport:
    """
    (n, count) rows plus the order verdict when enough rows exist.

    ``lower_bound`` marks counts that only bound the true quantity from below.
    """

    values: List[Tuple[int, int]]
    fitted_exponent: Optional[Fraction] = None
    verdict: Optional[str] = None
    lower_bound: bool = False
    rates: Dict[int, float] = field(default_factory=dict)
    witnesses: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    fit: Dict[str, float] = field(default_factory=dict)

    @property
    def monotone(self) -> bool:
        counts = [c for _, c in self.values]
        return all(a <= b for a, b in zip(counts, counts[1:]))

    @property
    def increments(self) -> Dict[int, float]:
        """log(count_n / count_{n-1}); exactly 0 where the count stalls."""
        return {n: math.log(c / p) for (_, p), (n, c) in zip(self.values, self.values[1:])}

    @property
    def polynomial(self) -> Optional[bool]:
        return None if self.verdict is None else self.verdict == POLYNOMIAL


def _residual(x: np.ndarray, y: np.ndarray) -> Tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(np.sum((y - (slope * x + intercept)) ** 2))


def fit_order(values: Sequence[Tuple[int, int]], budgets: Optional[Budgets] = None) -> Dict[str, Any]:
    """
    Least-squares fits of log count against log n and against n.

    Raises:
        DegenerateInput: fewer than 4 rows
        InputError: a non-positive n or count
    """
    budgets = budgets or DEFAULT_BUDGETS
    if len(values) < 4:
        raise DegenerateInput(f"order fit needs at least 4 points, got {len(values)}")
    ns = np.array([n for n, _ in values], dtype=float)
    counts = np.array([c for _, c in values], dtype=float)
    if np.any(ns <= 0) or np.any(counts <= 0):
        raise InputError("order fit needs positive n and counts")
    logs = np.log(counts)
    if np.all(counts == counts[0]):
        exponent, power_res, rate, exp_res = 0.0, 0.0, 0.0, 0.0
    else:
        exponent, power_res = _residual(np.log(ns), logs)
        rate, exp_res = _residual(ns, logs)
    threshold = float(budgets.poly_threshold)
    superpoly = exponent > threshold and exp_res <= power_res
    logger.debug("fit_order: exponent %.4f (res %.4g), rate %.4f (res %.4g)", exponent, power_res, rate, exp_res)
    return {
        "exponent": exponent,
        "power_residual": power_res,
        "rate": rate,
        "exponential_residual": exp_res,
        "verdict": SUPER_POLYNOMIAL if superpoly else POLYNOMIAL,
    }


def poly_order_fit(values: Sequence[Tuple[int, int]], budgets: Optional[Budgets] = None) -> GrowthReport:
    """
    Verdict on polynomial order for a table of counts.

    SuperPolynomialEvidence needs both a log-log slope above
    ``poly_threshold`` and an exponential fit at least as good as the power
    fit. Constant counts give exponent 0.
    """
    budgets = budgets or DEFAULT_BUDGETS
    rows = [(int(n), int(c)) for n, c in values]
    report = GrowthReport(rows)
    if not report.monotone:
        logger.warning("poly_order_fit: counts are not monotone in n: %s", rows)
    fit = fit_order(rows, budgets)
    report.fit = {k: v for k, v in fit.items() if k != "verdict"}
    report.fitted_exponent = to_rational(fit["exponent"], budgets.farey_denominator)
    report.verdict = fit["verdict"]
    return report


def attach_fit(report: GrowthReport, budgets: Optional[Budgets] = None) -> GrowthReport:
    """Fill in the verdict in place when the table has at least 4 rows."""
    if len(report.values) >= 4:
        fitted = poly_order_fit(report.values, budgets)
        report.fitted_exponent = fitted.fitted_exponent
        report.verdict = fitted.verdict
        report.fit = fitted.fit
    return report
