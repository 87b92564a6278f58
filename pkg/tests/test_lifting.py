from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.config import Budgets
from src.core.arcs import Arc, ArcSet
from src.dynamics import models
from src.dynamics.lifting import CircleMapPL, PLLifting, compose, is_homeomorphism, iterate
from src.errors import ComplexityBudgetExceeded, InputError, InvalidLifting

from .strategies import arcsets, circle_maps, circle_points, liftings

F = Fraction

SAMPLES = [F(k, 13) for k in range(13)] + [F(1, 2), F(-7, 5), F(9, 4)]


def test_eval_examples(doubling, rotation_third):
    assert doubling.lifting.eval(F(3, 4)) == F(3, 2)
    assert rotation_third.lifting.eval(F(5, 6)) == F(7, 6)
    assert doubling.lifting.eval(F(7, 4)) == F(7, 2)
    assert doubling(F(3, 4)) == F(1, 2)


def test_degree_examples(doubling, rotation_third, reflection):
    assert doubling.degree == 2
    assert rotation_third.degree == 1
    assert reflection.degree == -1
    assert PLLifting.from_points([(0, F(1, 2)), (1, F(1, 2))]).degree == 0


@pytest.mark.parametrize("points", [
    [(0, 0), (1, F(1, 2))],
    [(0, 0), (F(1, 2), 1), (F(1, 4), 0), (1, 1)],
    [(F(1, 8), 0), (1, 1)],
    [(0, 0), (F(1, 2), 1)],
    [(0, 0)],
])
def test_invalid_tables(points):
    with pytest.raises(InvalidLifting):
        PLLifting.from_points(points)


def test_float_breakpoints_are_rejected():
    with pytest.raises(InputError):
        PLLifting.from_points([(0, 0.5), (1, 1.5)])


def test_circle_map_normalizes_the_lift(rotation_third):
    shifted = CircleMapPL.from_points([(0, F(7, 3)), (1, F(10, 3))])
    assert shifted == rotation_third
    assert shifted.lifting.breakpoints[0][1] == F(1, 3)


def test_compose_examples(doubling, rotation_third):
    assert compose(doubling.lifting, doubling.lifting) == PLLifting.from_points([(0, 0), (1, 4)])
    r = rotation_third.lifting
    assert compose(r, r) == PLLifting.from_points([(0, F(2, 3)), (1, F(5, 3))])


def test_iterate_zero_is_identity(doubling):
    assert iterate(doubling.lifting, 0) == PLLifting.identity()
    with pytest.raises(InvalidLifting):
        iterate(doubling.lifting, -1)


def test_breakpoint_budget(doubling):
    with pytest.raises(ComplexityBudgetExceeded) as info:
        iterate(doubling.lifting, 5, Budgets(max_breakpoints=4))
    assert info.value.budget == 4


def test_image_interval_examples(doubling, rotation_third):
    assert doubling.lifting.image_interval(0, F(1, 2)) == (0, 1)
    assert models.bump(1).lifting.image_interval(0, 1) == (0, 1)
    assert rotation_third.lifting.image_interval(0, F(1, 3)) == (F(1, 3), F(2, 3))
    with pytest.raises(InvalidLifting):
        doubling.lifting.image_interval(1, 0)


def test_preimage_examples(doubling, rotation_third):
    half = ArcSet.of(Arc(0, F(1, 2)))
    assert doubling.preimage(half) == ArcSet.of(Arc(0, F(1, 4)), Arc(F(1, 2), F(1, 4)))
    quarter = ArcSet.of(Arc(0, F(1, 4)))
    assert rotation_third.preimage(quarter) == ArcSet.of(Arc(F(2, 3), F(1, 4)))


def test_preimage_of_constant_map():
    f = CircleMapPL.from_points([(0, F(1, 2)), (1, F(1, 2))])
    assert f.preimage(ArcSet.points([F(1, 2)])).is_full
    assert f.preimage(ArcSet.of(Arc(0, F(1, 4)))).is_empty


def test_shape_predicates(doubling, rotation_third, reflection, identity):
    assert rotation_third.is_homeomorphism and reflection.is_homeomorphism
    assert not doubling.is_homeomorphism
    assert not models.bump(1).is_homeomorphism
    assert models.bump(1).lifting.lap_count == 2
    assert doubling.lifting.lap_count == 1
    assert identity.lifting.lap_count == 1
    assert models.n_map().lifting.is_monotone is False
    assert doubling.is_surjective and models.bump(F(3, 2)).is_surjective
    assert not models.bump(F(3, 4)).is_surjective


def test_power_matches_repeated_application(doubling):
    square = doubling.power(2)
    assert square.name == "doubling^2"
    for x in SAMPLES:
        assert square(x) == doubling(doubling(x))


@given(liftings(), liftings(), st.sampled_from(SAMPLES))
def test_compose_agrees_with_evaluation(f, g, x):
    assert compose(f, g).eval(x) == f.eval(g.eval(x))


@given(liftings(), liftings())
def test_degree_is_multiplicative(f, g):
    assert compose(f, g).degree == f.degree * g.degree


@given(liftings())
def test_identity_is_neutral(f):
    ident = PLLifting.identity()
    for x in SAMPLES:
        assert compose(f, ident).eval(x) == f.eval(x)
        assert compose(ident, f).eval(x) == f.eval(x)


@given(liftings(), st.integers(min_value=-3, max_value=3))
def test_integer_shift_lifts_the_same_map(f, m):
    assert CircleMapPL(f.shift(m)) == CircleMapPL(f)


@given(liftings(), st.sampled_from(SAMPLES))
def test_periodicity_of_the_lift(f, x):
    assert f.eval(x + 1) == f.eval(x) + f.degree


@given(circle_maps(max_inner=2), arcsets(max_arcs=2), circle_points)
def test_preimage_is_exact(f, target, x):
    assert f.preimage(target).contains(x) == target.contains(f(x))


@given(circle_maps(degrees=(1,)))
def test_homeomorphism_predicate(f):
    strict = all(s > 0 for s in f.lifting.slopes)
    assert is_homeomorphism(f.lifting) == strict


@given(circle_maps(max_inner=2), arcsets(max_arcs=2))
def test_image_of_the_preimage_stays_inside(f, target):
    assert f.image(f.preimage(target)).issubset(target)


@given(circle_maps(max_inner=2), arcsets(max_arcs=2))
def test_preimage_of_the_image_covers_the_source(f, source):
    assert source.issubset(f.preimage(f.image(source)))
