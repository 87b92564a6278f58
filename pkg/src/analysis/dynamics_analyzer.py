"""
Runs the analyses behind each command and renders deterministic reports.
"""
import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except Exception:  # fallback for headless envs
    plt = None

from ..config import DEFAULT_BUDGETS, Budgets
from ..core.rational import approx, as_rational, format_rational
from ..dynamics.horseshoe import ExtensibleWitness, find_horseshoe, is_extensible
from ..dynamics.lifting import CircleMapPL
from ..dynamics.omega import NonSeparableEvidence, NotComparable, Separable, separability_test
from ..dynamics.periodic import check_period_structure, invariant_interval, period_set, periodic_points
from ..dynamics.rotation import exact_rational_rotation, rotation_bounds
from ..errors import ComplexityBudgetExceeded, InputError, NonStabilizing, ToolkitError
from ..storage import reports
from .complexity import entropy_growth, pattern_growth, sstar_bounded
from .covers import Cover, halves
from .growth import GrowthReport
from .independence import in_pair_scan
from .lemma_suites import run_suite

logger = logging.getLogger(__name__)

OK = "ok"
INPUT_ERROR = "input-error"
REFUSED = "refused"
INCONCLUSIVE = "inconclusive"
FAILED = "failed"

EXIT_CODES = {OK: 0, INPUT_ERROR: 1, REFUSED: 1, INCONCLUSIVE: 2, FAILED: 2}


def _status_of(e: Exception) -> str:
    if isinstance(e, (ComplexityBudgetExceeded, NonStabilizing)):
        return INCONCLUSIVE
    if isinstance(e, (InputError, ValueError)):
        return INPUT_ERROR
    return REFUSED


def _fmt(value: Any) -> str:
    """Exact text for a report cell; rationals get a marked approximation."""
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return format_rational(value)
        return f"{format_rational(value)} (~{approx(value)})"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def _growth_rows(report: GrowthReport, label: str) -> List[Dict[str, Any]]:
    increments = report.increments
    rows = []
    for n, count in report.values:
        row = {"n": n, label: count}
        if n in report.rates:
            row["rate"] = report.rates[n]
        if n in increments:
            row["increment"] = increments[n]
        if n in report.witnesses:
            row["argmax"] = report.witnesses[n]
        rows.append(row)
    return rows


def _growth_section(report: GrowthReport, label: str) -> Dict[str, Any]:
    return {
        "rows": _growth_rows(report, label),
        "lower_bound": report.lower_bound,
        "monotone": report.monotone,
        "fitted_exponent": report.fitted_exponent,
        "verdict": report.verdict,
        "fit": dict(report.fit),
    }


class DynamicsAnalyzer:
    """Analyzes PL circle maps command by command and keeps every section it ran."""

    def __init__(self, budgets: Optional[Budgets] = None):
        self.budgets = budgets or DEFAULT_BUDGETS
        self.results: List[Dict[str, Any]] = []

    def _record(self, command: str, f: CircleMapPL, work) -> Dict[str, Any]:
        section: Dict[str, Any] = {"command": command, "map": str(f)}
        try:
            section.update(work())
            section.setdefault("status", OK)
        except ToolkitError as e:
            section.update({"status": _status_of(e), "error": str(e), "error_type": type(e).__name__})
            if isinstance(e, ComplexityBudgetExceeded) and e.partial is not None:
                section["partial"] = e.partial
            logger.warning("%s: %s", command, e)
        except ValueError as e:
            section.update({"status": INPUT_ERROR, "error": str(e), "error_type": type(e).__name__})
        self.results.append(section)
        return section

    # -- sections --------------------------------------------------------------

    def map_profile(self, f: CircleMapPL) -> Dict[str, Any]:
        """Degree, monotonicity, homeomorphism, surjectivity, laps, fixed set and invariant-interval case."""
        F = f.lifting
        profile: Dict[str, Any] = {
            "degree": f.degree,
            "breakpoints": F.piece_count + 1,
            "monotone": F.is_monotone,
            "homeomorphism": f.is_homeomorphism,
            "surjective": f.is_surjective,
            "laps": F.lap_count,
            "fixed": periodic_points(f, 1, self.budgets),
        }
        try:
            inv = invariant_interval(f, self.budgets)
            profile["invariant_case"] = inv.case
            profile["invariant_interval"] = (inv.a, inv.b)
        except ToolkitError as e:
            profile["invariant_case"] = None
            profile["invariant_reason"] = f"{type(e).__name__}: {e}"
        return profile

    def analyze(self, f: CircleMapPL, horizon: Optional[int] = None) -> Dict[str, Any]:
        horizon = horizon or self.budgets.extensibility_horizon

        def work():
            out = {"horizon": horizon, "profile": self.map_profile(f)}
            verdict = is_extensible(f.lifting, horizon, self.budgets)
            if isinstance(verdict, ExtensibleWitness):
                out["extensible"] = {"n": verdict.n, "r": verdict.r, "image": verdict.interval}
            else:
                out["extensible"] = None
            cert = find_horseshoe(f, horizon, self.budgets)
            out["horseshoe"] = None if cert is None else {"n": cert.n, "k1": cert.k1, "k2": cert.k2}
            out["periods"] = sorted(period_set(f, horizon, self.budgets))
            structure = check_period_structure(f, horizon, self.budgets)
            out["period_structure"] = None if structure is None else {
                "k": structure.k, "n": str(structure.n), "saturated": structure.saturated}
            return out

        return self._record("analyze", f, work)

    def rotation(self, f: CircleMapPL, n: int = 64, q_max: Optional[int] = 16) -> Dict[str, Any]:
        def work():
            est = rotation_bounds(f.lifting, n, q_max, self.budgets)
            out = {"n": n, "lower": est.lower, "upper": est.upper, "width": est.width,
                   "exact": est.exact, "fractional": est.fractional, "convergent": est.convergent}
            if f.lifting.is_nondecreasing and q_max:
                found = exact_rational_rotation(f.lifting, q_max, self.budgets)
                out["witness"] = None if found is None else {"point": found.witness, "period": found.period}
            return out

        return self._record("rotation", f, work)

    def entropy(self, f: CircleMapPL, cover: Optional[Cover] = None, n_max: int = 8) -> Dict[str, Any]:
        cover = cover or halves()

        def work():
            growth = entropy_growth(f, cover, n_max, self.budgets)
            out = _growth_section(growth, "count")
            out.update({"n_max": n_max, "cover_size": len(cover), "rate": growth.rates[n_max]})
            return out

        return self._record("entropy", f, work)

    def pattern(self, f: CircleMapPL, cover: Optional[Cover] = None, n_max: int = 5, T: int = 8) -> Dict[str, Any]:
        cover = cover or halves()

        def work():
            out = _growth_section(pattern_growth(f, cover, n_max, T, self.budgets), "pstar")
            out.update({"n_max": n_max, "T": T, "cover_size": len(cover)})
            return out

        return self._record("pattern", f, work)

    def separated(self, f: CircleMapPL, eps: Any, n_max: int = 4, T: int = 8, delta: Any = None) -> Dict[str, Any]:
        eps = as_rational(eps, name="epsilon")

        def work():
            out = _growth_section(sstar_bounded(f, n_max, eps, T, delta, self.budgets), "sstar")
            out.update({"epsilon": eps, "n_max": n_max, "T": T})
            return out

        return self._record("sstar", f, work)

    def independence(self, f: CircleMapPL, x: Any, y: Any, radii: Optional[Sequence[Any]] = None,
                     m_target: int = 3, T: int = 12) -> Dict[str, Any]:
        def work():
            ev = in_pair_scan(f, x, y, radii, m_target, T, self.budgets)
            rows = [{"radius": r, "size": ev.sizes[r], "indices": ev.witnesses[r]} for r in ev.sizes]
            return {"x": ev.x, "y": ev.y, "T": T, "m_target": m_target, "rows": rows,
                    "level": ev.level, "consistent": ev.consistent}

        return self._record("independence", f, work)

    def nonsep(self, f: CircleMapPL, x: Any, y: Any, depth: int = 3, horizon: Optional[int] = None) -> Dict[str, Any]:
        def work():
            verdict = separability_test(f, x, y, depth, horizon, self.budgets)
            out: Dict[str, Any] = {"x": as_rational(x, name="x"), "y": as_rational(y, name="y"),
                                   "depth": depth, "verdict": type(verdict).__name__}
            if isinstance(verdict, Separable):
                out.update({"j1": verdict.j1, "j2": verdict.j2, "periods": (verdict.period1, verdict.period2)})
            elif isinstance(verdict, NonSeparableEvidence):
                out.update({"periods": verdict.chain.periods, "seed": verdict.seed,
                            "levels": [c.iterate_containing(out["x"]) for c in verdict.chain.levels]})
            elif isinstance(verdict, NotComparable):
                out.update({"reason": verdict.reason, "status": INCONCLUSIVE})
            return out

        return self._record("nonsep", f, work)

    def verify(self, f: CircleMapPL, lemma: str, **options: Any) -> Dict[str, Any]:
        def work():
            out = run_suite(lemma, f, self.budgets, **options)
            out["status"] = OK if out["passed"] else FAILED
            return out

        return self._record("verify", f, work)

    # -- reporting -------------------------------------------------------------

    @property
    def exit_code(self) -> int:
        """Worst exit code over the recorded sections."""
        return max((EXIT_CODES.get(s.get("status", OK), 0) for s in self.results), default=0)

    def generate_report(self, output_path: str = None) -> str:
        """Render every section as text; identical inputs give identical bytes."""
        if not self.results:
            return "No analysis results available."

        report = []
        report.append("=" * 80)
        report.append("CIRCLE MAP ANALYSIS REPORT")
        report.append("=" * 80)
        report.append(f"Sections: {len(self.results)}")
        report.append("")

        for section in self.results:
            report.append(f"{section['command'].upper()}: {section['map']}")
            report.append("-" * 40)
            if "error" in section:
                report.append(f"  status: {section['status']}")
                report.append(f"  {section['error_type']}: {section['error']}")
                if "partial" in section:
                    report.append(f"  partial: {_fmt(section['partial'])}")
                report.append("")
                continue
            for key, value in section.items():
                if key in ("command", "map", "rows", "profile", "fit", "checks"):
                    continue
                report.append(f"  {key}: {_fmt(value)}")
            for block in ("profile", "checks", "fit"):
                if section.get(block):
                    report.append(f"  {block}:")
                    for key, value in section[block].items():
                        report.append(f"    {key}: {_fmt(value)}")
            if section.get("rows"):
                df = pd.DataFrame([{k: v if isinstance(v, (int, float)) and not isinstance(v, bool) else _fmt(v)
                                    for k, v in row.items()} for row in section["rows"]])
                report.append("")
                report.append(df.to_string(index=False, float_format=lambda v: f"{v:.6f}"))
            report.append("")

        report_text = "\n".join(report)

        if output_path:
            with open(output_path, 'w') as f:
                f.write(report_text)

        return report_text

    def to_structured(self) -> str:
        """JSON document with sections keyed by command; rationals as p/q plus approx."""
        return reports.dumps(self.results)

    def to_structured_section(self, section: Dict[str, Any]) -> Dict[str, Any]:
        return reports.to_jsonable(section)

    def create_visualization(self, output_path: str = None):
        """Plot the growth tables (log count against n); returns the figure or None."""
        curves: List[Tuple[str, List[int], List[int]]] = []
        for section in self.results:
            rows = section.get("rows") or []
            label = next((k for k in ("count", "pstar", "sstar") if rows and k in rows[0]), None)
            if label is None:
                continue
            curves.append((f"{section['command']} {section['map']}",
                           [r["n"] for r in rows], [r[label] for r in rows]))

        if not curves or plt is None:
            return None

        fig, ax = plt.subplots(figsize=(8, 5))
        for name, ns, counts in curves:
            ax.plot(ns, [math.log(c) for c in counts], marker="o", label=name)
        ax.set_title("Growth of join and pattern counts")
        ax.set_xlabel("n")
        ax.set_ylabel("log count")
        ax.legend()
        fig.tight_layout()

        if output_path:
            fig.savefig(output_path, dpi=150, bbox_inches="tight")
            plt.close(fig)
        return fig

    def save_results(self, output_path: str) -> None:
        """Save analysis results as a structured report."""
        reports.write_report(output_path, self.results)

    def load_results(self, input_path: str) -> None:
        """Load analysis results from a structured report."""
        self.results = reports.read_report(input_path)
