"""hypothesis strategies for rationals, arcs and PL liftings"""
from fractions import Fraction

from hypothesis import strategies as st

from src.core.arcs import Arc, ArcSet
from src.dynamics.lifting import CircleMapPL, PLLifting

ONE = Fraction(1)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=24)
circle_points = st.fractions(min_value=0, max_value=1, max_denominator=24).filter(lambda q: q < 1)
lengths = st.fractions(min_value=0, max_value=1, max_denominator=16)


@st.composite
def arcs(draw):
    return Arc(draw(circle_points), draw(lengths))


@st.composite
def arcsets(draw, max_arcs=3):
    return ArcSet.of(*draw(st.lists(arcs(), max_size=max_arcs)))


@st.composite
def liftings(draw, degrees=(-1, 0, 1, 2), max_inner=3):
    inner = draw(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=8)
                          .filter(lambda q: 0 < q < 1), max_size=max_inner, unique=True))
    xs = [Fraction(0)] + sorted(inner) + [ONE]
    ys = [draw(st.fractions(min_value=-1, max_value=2, max_denominator=8)) for _ in xs[:-1]]
    ys.append(ys[0] + draw(st.sampled_from(degrees)))
    return PLLifting.from_points(zip(xs, ys))


@st.composite
def circle_maps(draw, **kwargs):
    return CircleMapPL(draw(liftings(**kwargs)))


@st.composite
def covering_arcs(draw, max_extra=2):
    """Arcs around a random cut of the circle, padded to overlap, plus a few extras."""
    cuts = sorted(set(draw(st.lists(circle_points, min_size=1, max_size=5))))
    out = []
    for a, b in zip(cuts, cuts[1:] + [cuts[0] + 1]):
        pad = draw(st.fractions(min_value=0, max_value=Fraction(1, 8), max_denominator=16))
        out.append(Arc(a - pad, min(ONE, b - a + 2 * pad)))
    return out + draw(st.lists(arcs(), max_size=max_extra))
