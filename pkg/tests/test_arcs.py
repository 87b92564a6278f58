from fractions import Fraction

import pytest
from hypothesis import given

from src.core.arcs import Arc, ArcSet, union_all
from src.errors import DegenerateInput

from .strategies import arcs, arcsets, circle_points

F = Fraction


def test_arc_wraps_through_zero():
    arc = Arc(F(7, 8), F(1, 4))
    assert arc.contains(0) and arc.contains(F(1, 8)) and arc.contains(F(7, 8))
    assert not arc.contains(F(1, 4))
    assert arc.end == F(9, 8)
    assert str(arc) == "[7/8, 9/8]"


def test_arc_constructors():
    assert Arc.around(0, F(1, 8)) == Arc(F(7, 8), F(1, 4))
    assert Arc.around(F(1, 2), F(1, 2)).is_full
    assert Arc.between(F(3, 4), F(1, 4)) == Arc(F(3, 4), F(1, 2))
    assert Arc.point(F(5, 4)) == Arc(F(1, 4), 0)
    assert Arc.from_lift(F(1, 2), F(7, 4)).is_full
    assert Arc(F(1, 3), 1) == Arc.full()


def test_arc_rejects_bad_length():
    with pytest.raises(DegenerateInput):
        Arc(0, F(3, 2))
    with pytest.raises(DegenerateInput):
        Arc(0, F(-1, 2))


def test_intersect_example():
    a = ArcSet.of(Arc(0, F(1, 2)))
    b = ArcSet.of(Arc(F(1, 4), F(1, 2)))
    assert a.intersect(b) == ArcSet.of(Arc(F(1, 4), F(1, 4)))


def test_touching_arcs_meet_in_a_point():
    a = ArcSet.of(Arc(0, F(1, 2)))
    b = ArcSet.of(Arc(F(1, 2), F(1, 2)))
    meet = a.intersect(b)
    assert meet == ArcSet.points([0, F(1, 2)])
    assert meet.measure == 0
    assert meet.solid().is_empty
    assert a.union(b).is_full


def test_full_and_empty():
    assert ArcSet.full().complement().is_empty
    assert ArcSet.empty().complement().is_full
    assert ArcSet.full().measure == 1
    assert not ArcSet.empty()


def test_union_normalizes_wrapping_pieces():
    s = ArcSet.of(Arc(F(3, 4), F(1, 4)), Arc(0, F(1, 8)))
    assert s == ArcSet.of(Arc(F(3, 4), F(3, 8)))
    assert len(s) == 1


def test_measure_of_wrapping_arc():
    assert ArcSet.of(Arc(F(7, 8), F(1, 4))).measure == F(1, 4)


def test_fatten_points():
    s = ArcSet.points([0]).fatten(F(1, 10))
    assert s == ArcSet.of(Arc(F(9, 10), F(1, 5)))


def test_union_all():
    halves = [ArcSet.of(Arc(0, F(1, 2))), ArcSet.of(Arc(F(1, 2), F(1, 2)))]
    assert union_all(halves).is_full
    assert union_all([]).is_empty


@given(arcsets(), arcsets())
def test_union_and_intersection_commute(a, b):
    assert a.union(b) == b.union(a)
    assert a.intersect(b) == b.intersect(a)


@given(arcsets(), arcsets())
def test_inclusion_exclusion_of_measure(a, b):
    assert a.union(b).measure + a.intersect(b).measure == a.measure + b.measure


@given(arcsets(), arcsets())
def test_subset_relations(a, b):
    assert a.issubset(a.union(b))
    assert a.intersect(b).issubset(a)


@given(arcsets())
def test_complement_measure(a):
    assert a.measure + a.complement().measure == 1


@given(arcsets())
def test_double_complement_keeps_the_solid_part(a):
    assert a.complement().complement() == a.solid()


@given(arcsets(), arcsets())
def test_de_morgan_up_to_measure(a, b):
    left = a.union(b).complement()
    right = a.complement().intersect(b.complement())
    assert left.measure == right.measure


@given(arcsets(), circle_points)
def test_contains_agrees_with_point_intersection(a, p):
    assert a.contains(p) == (not a.intersect(ArcSet.points([p])).is_empty)


@given(arcsets())
def test_witness_lies_inside(a):
    w = a.witness()
    assert (w is None) == a.is_empty
    if w is not None:
        assert a.contains(w)


@given(arcs())
def test_single_arc_round_trip(arc):
    s = ArcSet.of(arc)
    assert s.measure == arc.length
    assert s.contains(arc.start) and s.contains(arc.end)


@given(arcsets(), arcsets(), arcsets())
def test_intersection_distributes_over_union(a, b, c):
    assert a.union(b).intersect(c) == a.intersect(c).union(b.intersect(c))


@given(arcsets())
def test_normal_form_is_idempotent(a):
    assert ArcSet.of(*a.arcs) == a
    assert a.union(a) == a
    assert a.intersect(a) == a
