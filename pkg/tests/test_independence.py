from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from src.analysis.independence import (ArcPair, in_pair_scan, is_independence_set, max_independence,
                                       pattern_cell, pattern_nonempty, power_transform_check)
from src.config import Budgets
from src.core.arcs import Arc
from src.dynamics import models
from src.errors import ComplexityBudgetExceeded, DegenerateInput, InputError

from .strategies import circle_maps

F = Fraction

HALVES = ArcPair.from_arcs(Arc(0, F(1, 2)), Arc(F(1, 2), F(1, 2)))
APART = ArcPair.from_arcs(Arc(0, F(1, 4)), Arc(F(1, 2), F(1, 4)))


def test_pair_members():
    assert HALVES.member(2) == HALVES.u2
    with pytest.raises(InputError):
        HALVES.member(3)
    with pytest.raises(DegenerateInput):
        ArcPair.from_arcs(Arc(0, 0), Arc(F(1, 2), F(1, 4)))


def test_pattern_cell_of_doubling(doubling):
    assert pattern_nonempty(doubling, HALVES, (0, 1, 2), (1, 2, 1)) == F(5, 16)
    cell = pattern_cell(doubling, APART, (0, 1), (1, 1))
    assert cell.contains(F(1, 16))
    assert not cell.contains(F(3, 16))
    with pytest.raises(InputError):
        pattern_cell(doubling, HALVES, (0, 1), (1,))


def test_pattern_cap(doubling):
    with pytest.raises(ComplexityBudgetExceeded):
        pattern_cell(doubling, HALVES, (0, 1, 2), (1, 1, 1), Budgets(pattern_cap=2))
    with pytest.raises(ComplexityBudgetExceeded):
        is_independence_set(doubling, HALVES, range(4), Budgets(pattern_cap=3))


def test_doubling_is_independent_everywhere(doubling):
    witness = is_independence_set(doubling, HALVES, [0, 1, 2])
    assert witness
    assert witness.patterns_verified == 8
    assert witness.sample_points[(1, 2, 1)] == F(5, 16)


def test_identity_fails_on_two_indices(identity):
    witness = is_independence_set(identity, APART, [0, 1])
    assert not witness
    assert witness.failed == (1, 2)
    assert is_independence_set(identity, APART, [3])


def test_max_independence(doubling, identity):
    found = max_independence(doubling, HALVES, 6)
    assert found.size == 7
    assert found.witness.index_set == tuple(range(7))
    assert max_independence(identity, APART, 5).size == 1
    capped = max_independence(doubling, HALVES, 6, m_cap=3)
    assert capped.size == 3 and capped.cap_hit
    with pytest.raises(InputError):
        max_independence(doubling, HALVES, -1)


def test_in_pair_scan(doubling):
    evidence = in_pair_scan(doubling, 0, F(1, 2), radii=[F(1, 8)], m_target=3, T=9)
    assert evidence.level >= 3
    assert evidence.consistent
    with pytest.raises(DegenerateInput):
        in_pair_scan(doubling, F(1, 4), F(5, 4))


def test_identity_pair_is_not_an_in_pair(identity):
    evidence = in_pair_scan(identity, 0, F(1, 2), radii=[F(1, 8), F(1, 32)], m_target=2, T=4)
    assert evidence.level == 1
    assert not evidence.consistent


def test_power_transform(doubling):
    report = power_transform_check(doubling, 2, HALVES, (0, 1, 2, 3))
    assert report["passed"]
    assert report["a"]["scaled"] == (0, 2, 4, 6)
    assert report["b"]["residue"] == 0
    assert report["b"]["reduced"] == (0, 1)
    with pytest.raises(InputError):
        power_transform_check(doubling, 0, HALVES, (0,))


def test_power_transform_with_failed_premise(identity):
    report = power_transform_check(identity, 2, APART, (0, 1))
    assert report["a"]["premise"] is False
    assert report["b"]["premise"] is False
    assert report["passed"]


@pytest.mark.slow
def test_doubling_half_arcs_reach_the_horizon(doubling):
    assert max_independence(doubling, HALVES, 10).size == 11


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [F(1, 3), F(2, 5)])
def test_rotations_have_no_large_independence_sets(alpha):
    f = models.rotation(alpha)
    for i in range(10):
        pair = ArcPair.from_arcs(Arc(F(i, 10), F(1, 16)), Arc(F(i, 10) + F(1, 2), F(1, 16)))
        assert max_independence(f, pair, 12).size <= 2


@given(circle_maps(max_inner=1, degrees=(0, 1, 2)), st.sampled_from([HALVES, APART]),
       st.sets(st.integers(min_value=0, max_value=4), min_size=1, max_size=4))
def test_subsets_of_independence_sets_are_independent(f, pair, I):
    if not is_independence_set(f, pair, I):
        return
    for k in range(1, len(I)):
        for subset in combinations(sorted(I), k):
            assert is_independence_set(f, pair, subset)
