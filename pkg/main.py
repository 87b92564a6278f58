import argparse
import logging
import os
import sys

from src.analysis.covers import Cover, cover_from_text, halves, quarters
from src.analysis.dynamics_analyzer import DynamicsAnalyzer
from src.analysis.lemma_suites import SUITES
from src.config import Budgets
from src.core.rational import parse_rational
from src.dynamics.lifting import CircleMapPL
from src.dynamics.models import MODELS
from src.errors import InputError, ToolkitError
from src.storage.map_files import load_map


COVERS = {
    "halves": halves,
    "quarters": quarters,
}

MODEL_PREFIX = "model:"
FILE_PREFIX = "file:"
ENV_PREFIX = "CDYN_"
FORMATS = ("text", "structured")


class ToolkitParser(argparse.ArgumentParser):
    """Usage errors exit with code 1 like every other input error."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _rational(text):
    try:
        return parse_rational(text)
    except InputError as e:
        raise argparse.ArgumentTypeError(str(e))


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text):
    value = int(text) if text.lstrip("-").isdigit() else -1
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _report_format(text):
    if text not in FORMATS:
        raise argparse.ArgumentTypeError(f"invalid format {text!r} (choose from {', '.join(FORMATS)})")
    return text


def env_default(flag: str, fallback=None):
    """``CDYN_<FLAG>`` from the environment, else the fallback.

    String defaults go through the flag's ``type`` when parsed, so bad
    values are usage errors just like bad flags.
    """
    return os.environ.get(ENV_PREFIX + flag.lstrip("-").replace("-", "_").upper(), fallback)


def load_target(target: str) -> CircleMapPL:
    """A map file path, or ``model:<name>`` for a built-in model."""
    if target.startswith(MODEL_PREFIX):
        name = target[len(MODEL_PREFIX):]
        if name not in MODELS:
            raise InputError(f"unknown model {name!r}; choose from {', '.join(MODELS)}")
        return MODELS[name]()
    return load_map(target)


def resolve_cover(name: str) -> Cover:
    if name.startswith(FILE_PREFIX):
        with open(name[len(FILE_PREFIX):], "r", encoding="utf-8") as fh:
            return cover_from_text(fh.read())
    if name not in COVERS:
        raise InputError(f"unknown cover {name!r}; use halves, quarters or file:<path>")
    return COVERS[name]()


def budgets_from_args(args) -> Budgets:
    """Defaults, then CDYN_ environment variables, then flags."""
    return Budgets.from_env().with_overrides(
        max_breakpoints=args.budget_breakpoints,
        extensibility_horizon=args.horizon,
        threads=args.threads,
        progress=True if args.progress else None,
    )


def cmd_analyze(analyzer, f, args):
    analyzer.analyze(f, args.horizon)


def cmd_rotation(analyzer, f, args):
    analyzer.rotation(f, n=args.n or 64, q_max=args.q_max)


def cmd_entropy(analyzer, f, args):
    analyzer.entropy(f, resolve_cover(args.cover), n_max=args.n or 8)


def cmd_pattern(analyzer, f, args):
    n, T = args.n or 5, 8 if args.T is None else args.T
    analyzer.pattern(f, resolve_cover(args.cover), n_max=n, T=T)
    if args.epsilon is not None:
        analyzer.separated(f, args.epsilon, n_max=n, T=T, delta=args.delta)


def cmd_independence(analyzer, f, args):
    x, y = args.pair
    analyzer.independence(f, x, y, radii=args.radii, m_target=args.m_target, T=12 if args.T is None else args.T)


def cmd_nonsep(analyzer, f, args):
    x, y = args.pair
    analyzer.nonsep(f, x, y, depth=args.depth or 3, horizon=args.horizon)


def _suite_options(args):
    by_lemma = {
        "period-correspondence": {"N": args.n},
        "power-transform": {"p": args.p},
        "separated-bound": {"eps": args.epsilon, "n_max": args.n, "T": args.T},
        "horseshoe-entropy": {"horizon": args.horizon, "n_max": args.n},
        "interval-points": {"horizon": args.horizon},
        "nonsep-power": {"p": args.p, "depth": args.depth},
    }
    return {k: v for k, v in by_lemma.get(args.lemma, {}).items() if v is not None}


def cmd_verify(analyzer, f, args):
    analyzer.verify(f, args.lemma, **_suite_options(args))


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("map", help="Map file (.cmap) or model:<name>")
    common.add_argument("--horizon", type=_positive, default=env_default("--horizon"), help="Iterate horizon for searches")
    common.add_argument("--epsilon", type=_rational, default=env_default("--epsilon"), help="Separation scale p/q")
    common.add_argument("--delta", type=_rational, default=env_default("--delta"), help="Candidate grid spacing p/q")
    common.add_argument("--depth", type=_positive, default=env_default("--depth"), help="Nested-chain depth")
    common.add_argument("--T", type=_non_negative, default=env_default("--T"), help="Largest time index")
    common.add_argument("--n", type=_positive, default=env_default("--n"), help="Largest n in growth tables")
    common.add_argument("--threads", type=_positive, default=env_default("--threads"), help="Worker threads for sequence searches")
    common.add_argument("--format", type=_report_format, default=env_default("--format", "text"), help="Report format")
    common.add_argument("--budget-breakpoints", type=_positive, default=env_default("--budget-breakpoints"),
                        help="Breakpoint cap for iterates")
    common.add_argument("--cover", default=env_default("--cover", "halves"), help="halves, quarters or file:<path>")
    common.add_argument("--output", "-o", default=env_default("--output"), help="Also write the report to this path")
    common.add_argument("--progress", action="store_true", help="Show progress bars")
    common.add_argument("--verbose", "-v", action="count", default=0, help="-v info, -vv debug")
    return common


def build_parser():
    common = _common_flags()
    p = ToolkitParser(description="Exact toolkit for piecewise-linear circle maps")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=ToolkitParser)

    a = sub.add_parser("analyze", parents=[common], help="Profile, extensibility, horseshoe and periods")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("rotation", parents=[common], help="Rotation number bounds (degree 1)")
    r.add_argument("--q-max", type=_positive, default=env_default("--q-max", 16), help="Largest period tried for an exact value")
    r.set_defaults(func=cmd_rotation)

    e = sub.add_parser("entropy", parents=[common], help="Join-count growth of a cover")
    e.set_defaults(func=cmd_entropy)

    pt = sub.add_parser("pattern", parents=[common], help="p* table with order fit; s* table with --epsilon")
    pt.set_defaults(func=cmd_pattern)

    i = sub.add_parser("independence", parents=[common], help="IN-pair scan over shrinking radii")
    i.add_argument("--pair", nargs=2, type=_rational, default=[parse_rational("0"), parse_rational("1/2")],
                   metavar=("X", "Y"), help="The two points")
    i.add_argument("--radii", nargs="+", type=_rational, help="Arc radii (default from budgets)")
    i.add_argument("--m-target", type=_positive, default=env_default("--m-target", 3), help="Independence level sought")
    i.set_defaults(func=cmd_independence)

    ns = sub.add_parser("nonsep", parents=[common], help="Separability verdict for a pair")
    ns.add_argument("--pair", nargs=2, type=_rational, required=True, metavar=("X", "Y"), help="The two points")
    ns.set_defaults(func=cmd_nonsep)

    v = sub.add_parser("verify", parents=[common], help="Run a named lemma suite")
    v.add_argument("--lemma", choices=list(SUITES.keys()), required=True)
    v.add_argument("--p", type=_positive, default=env_default("--p"), help="Power for the power-transform and nonsep-power suites")
    v.set_defaults(func=cmd_verify)

    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        budgets = budgets_from_args(args)
        f = load_target(args.map)
        analyzer = DynamicsAnalyzer(budgets)
        args.func(analyzer, f, args)
    except (ToolkitError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    text = analyzer.to_structured() if args.format == "structured" else analyzer.generate_report() + "\n"
    sys.stdout.write(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return analyzer.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
