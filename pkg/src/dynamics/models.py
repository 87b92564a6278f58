"""
Named PL circle maps used by the analyses, the lemma suites and the tests.
"""
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from ..core.rational import as_rational
from .lifting import CircleMapPL, PLLifting, compose

F = Fraction
Table = List[Tuple[Fraction, Fraction]]

# interval-map model: the full three-branch N-shaped map of [0, 1]
N_MAP: Table = [(F(0), F(0)), (F(1, 3), F(1)), (F(2, 3), F(0)), (F(1), F(1))]


def identity() -> CircleMapPL:
    return CircleMapPL(PLLifting.identity(), name="identity")


def rotation(alpha: Any) -> CircleMapPL:
    a = as_rational(alpha, name="alpha")
    return CircleMapPL.from_points([(0, a), (1, a + 1)], name=f"rotation({a})")


def doubling() -> CircleMapPL:
    return CircleMapPL.from_points([(0, 0), (1, 2)], name="doubling")


def reflection() -> CircleMapPL:
    return CircleMapPL.from_points([(0, 1), (1, 0)], name="reflection")


def bump(height: Any) -> CircleMapPL:
    """Degree-0 tent: 0 at the ends, ``height`` at 1/2."""
    h = as_rational(height, name="height")
    return CircleMapPL.from_points([(0, 0), (F(1, 2), h), (1, 0)], name=f"bump({h})")


def embed_interval_map(table: Sequence[Tuple[Any, Any]], name: str = "") -> CircleMapPL:
    """
    Degree-0 circle map carrying an interval map g of [0, 1] on the arc [0, 1/2].

    F(x) = g(2x)/2 on [0, 1/2], closed up linearly on [1/2, 1].
    """
    pts = [(as_rational(x) / 2, as_rational(y) / 2) for x, y in table]
    pts.append((F(1), pts[0][1]))
    return CircleMapPL.from_points(pts, name=name)


def n_map() -> CircleMapPL:
    return embed_interval_map(N_MAP, name="n-map")


def doubling_operator(table: Table) -> Table:
    """
    G = D(g): [0, 1/3] -> [2/3, 1] by 1 - g(3x)/3, [2/3, 1] -> [0, 1/3] by
    1 - x, linear across the gap. G^2 on [0, 1/3] is g rescaled by 1/3.
    """
    left = [(x / 3, 1 - y / 3) for x, y in table]
    return left + [(F(2, 3), F(1, 3)), (F(1), F(0))]


def period_doubling_table(depth: int) -> Table:
    table = list(N_MAP)
    for _ in range(depth):
        table = doubling_operator(table)
    return table


def period_doubling_model(depth: int = 3) -> CircleMapPL:
    """Circle map with cycles of periodic intervals of periods 2, 4, ..., 2^depth."""
    return embed_interval_map(period_doubling_table(depth), name=f"period-doubling({depth})")


def model_pairs(depth: int = 3) -> Dict[str, Any]:
    """
    Candidate pairs for the period-doubling model.

    The innermost level is [0, 1/(2*3^depth)], where f^(2^depth) acts as the
    N-map rescaled. The non-separable pair is that N-map's 2-cycle {1/4, 3/4};
    the separable pair moves the second point half a cycle away.
    """
    f = period_doubling_model(depth)
    scale = F(1, 2 * 3 ** depth)
    x, y = scale / 4, 3 * scale / 4
    half = 2 ** (depth - 1)
    g = f.power(half)
    return {
        "map": f,
        "nonseparable": (x, y),
        "separable": (x, g(x)),
        "radii": (scale / 4, scale / 12),
        "T": 2 ** (depth + 2),
        "m_target": 3,
    }


def fixed_point_deg1_map() -> CircleMapPL:
    """Degree 1, flat at the fixed point 0; the image hull of [0, 1] is [0, 5/4]."""
    return CircleMapPL.from_points(
        [(0, 0), (F(1, 4), 0), (F(1, 2), F(5, 4)), (F(3, 4), 1), (1, 1)], name="deg1-fixed")


def attracting_two_cycle_map() -> CircleMapPL:
    """Degree 0 with periods {1, 2}: attracting 2-cycle {0, 1/2}, repelling fixed point 1/4."""
    g = [(0, 1), (F(1, 4), F(7, 8)), (F(3, 4), F(1, 8)), (1, 0)]
    return embed_interval_map(g, name="two-cycle")


def attracting_fixed_point_map() -> CircleMapPL:
    """Degree 0 with an attracting fixed point 5/16 and a repelling one at 0."""
    g = [(0, 0), (F(1, 4), F(1, 2)), (1, F(3, 4))]
    return embed_interval_map(g, name="attracting-fixed")


def two_interval_cycle_map() -> CircleMapPL:
    """Degree 0 with the cycle of intervals [1/8, 1/4] <-> [5/8, 3/4]."""
    return CircleMapPL.from_points(
        [(0, F(1, 2)), (F(1, 8), F(5, 8)), (F(1, 4), F(3, 4)),
         (F(5, 8), F(1, 8)), (F(3, 4), F(1, 4)), (1, F(1, 2))], name="interval-cycle")


def period_two_homeomorphism() -> CircleMapPL:
    """Non-rigid orientation-preserving homeomorphism with the orbit {1/4, 3/4}."""
    return CircleMapPL.from_points(
        [(0, F(1, 3)), (F(1, 4), F(3, 4)), (F(3, 4), F(5, 4)), (1, F(4, 3))], name="period-two-homeo")


def conjugated_rotation(alpha: Any) -> CircleMapPL:
    """h o R_alpha o h^-1 for a fixed two-slope homeomorphism h."""
    h = PLLifting.from_points([(0, 0), (F(1, 2), F(1, 4)), (1, 1)])
    h_inv = PLLifting.from_points([(0, 0), (F(1, 4), F(1, 2)), (1, 1)])
    r = rotation(alpha).lifting
    return CircleMapPL(compose(h, compose(r, h_inv)), name=f"conjugated-rotation({as_rational(alpha)})")


MODELS = {
    "identity": identity,
    "doubling": doubling,
    "reflection": reflection,
    "n-map": n_map,
    "deg1-fixed": fixed_point_deg1_map,
    "two-cycle": attracting_two_cycle_map,
    "attracting-fixed": attracting_fixed_point_map,
    "interval-cycle": two_interval_cycle_map,
    "period-two-homeo": period_two_homeomorphism,
    "period-doubling": period_doubling_model,
}
