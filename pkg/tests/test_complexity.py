import math
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from src.analysis.complexity import (entropy_growth, homeomorphism_separated_bound, join_count, lebesgue_sandwich,
                                     max_clique, pattern_complexity, pattern_growth, separated_number,
                                     spanning_number, sstar_bounded, wandering_spanning_bound)
from src.analysis.covers import halves, partition_cover, uniform_cover
from src.analysis.growth import POLYNOMIAL, SUPER_POLYNOMIAL
from src.config import Budgets
from src.dynamics import models
from src.errors import ComplexityBudgetExceeded, DegenerateInput, InputError

from .strategies import circle_maps

F = Fraction


@pytest.mark.parametrize("times", [(0,), (0, 1), (2, 5, 5), (3, 1)])
def test_identity_joins_do_not_refine(identity, times):
    assert join_count(identity, halves(), times) == 2


def test_empty_join_is_the_trivial_cover(doubling):
    assert join_count(doubling, halves(), []) == 1


@pytest.mark.parametrize("times", [(-1,), (F(3, 2),), (True,)])
def test_join_times_are_non_negative_integers(doubling, times):
    with pytest.raises(InputError):
        join_count(doubling, halves(), times)


def test_doubling_join_splits_each_half(doubling):
    assert join_count(doubling, halves(), (0, 1)) == 4
    assert join_count(doubling, halves(), (1, 0, 1)) == 4


def test_pattern_complexity(identity, doubling):
    assert pattern_complexity(identity, halves(), 2, 3).value == 2
    result = pattern_complexity(doubling, halves(), 2, 3)
    assert (result.value, result.argmax) == (4, (0, 1))
    assert result.lower_bound


def test_pattern_search_limits(identity):
    with pytest.raises(InputError):
        pattern_complexity(identity, halves(), 0, 3)
    with pytest.raises(InputError):
        pattern_complexity(identity, halves(), 4, 3)
    with pytest.raises(ComplexityBudgetExceeded):
        pattern_complexity(identity, halves(), 2, 5, Budgets(tuple_cap=3))


def test_pattern_growth_of_the_identity_is_flat(identity):
    report = pattern_growth(identity, halves(), 4, 4)
    assert report.values == [(1, 2), (2, 2), (3, 2), (4, 2)]
    assert report.witnesses[2] == (0, 0)
    assert report.verdict == POLYNOMIAL
    assert report.fitted_exponent == 0
    assert report.lower_bound


def test_separated_sets_of_a_rotation(rotation_third):
    once = separated_number(rotation_third, [0], 1, F(1, 4))
    assert once.value == 4
    assert once.value <= homeomorphism_separated_bound(1, F(1, 4))
    twice = separated_number(rotation_third, [0, 1], 2, F(1, 4))
    assert twice.value == 4
    assert twice.exhaustive


@pytest.mark.parametrize("A, n, eps", [
    ([1, 1], 2, F(1, 4)),
    ([0], 2, F(1, 4)),
    ([0], 1, 0),
    ([-1, 2], 2, F(1, 4)),
])
def test_separated_input_checks(rotation_third, A, n, eps):
    with pytest.raises(InputError):
        separated_number(rotation_third, A, n, eps)


def test_candidate_cap(rotation_third):
    with pytest.raises(ComplexityBudgetExceeded):
        separated_number(rotation_third, [0], 1, F(1, 4), delta=F(1, 1000))


def test_spanning_set_of_the_identity(identity):
    result = spanning_number(identity, [0], 1, F(1, 2))
    assert result.value == 2
    assert result.verified


def test_max_clique():
    # triangle 0-1-2 plus an isolated vertex
    assert max_clique([0b0110, 0b0101, 0b0011, 0], 100) == ([0, 1, 2], True)
    assert max_clique([], 10) == ([], True)


def test_bounds():
    assert homeomorphism_separated_bound(3, F(1, 4)) == 15
    assert wandering_spanning_bound(2, F(1, 4), 1, 5) == 26
    with pytest.raises(InputError):
        wandering_spanning_bound(2, F(1, 4), 1, 4)


def test_lebesgue_sandwich(identity):
    row = lebesgue_sandwich(identity, uniform_cover(6, F(1, 3)), [0], 1, delta=F(1, 24))
    assert row["lebesgue"] == F(1, 6)
    assert row["epsilon"] == F(1, 12)
    assert row["join_cover"] == 3
    assert row["separated"] == 12
    assert row["join_finer"] == 13
    assert row["lower_certified"] and row["upper_certified"]


def test_sandwich_needs_a_positive_lebesgue_number(identity):
    with pytest.raises(DegenerateInput):
        lebesgue_sandwich(identity, partition_cover(4), [0], 1)


def test_entropy_growth_of_doubling(doubling):
    report = entropy_growth(doubling, halves(), 3)
    assert report.values[0] == (1, 2)
    assert report.rates[1] == pytest.approx(math.log(2))
    assert all(count <= 2 ** n for n, count in report.values)
    assert report.monotone
    assert report.verdict is None


def test_entropy_growth_of_the_identity(identity):
    report = entropy_growth(identity, halves(), 4)
    assert [c for _, c in report.values] == [2, 2, 2, 2]
    assert report.rates[4] == pytest.approx(math.log(2) / 4)
    with pytest.raises(InputError):
        entropy_growth(identity, halves(), 0)


def test_sstar_of_a_rotation(rotation_third):
    report = sstar_bounded(rotation_third, 2, F(1, 4), 2, budgets=Budgets(threads=2))
    assert report.values == [(1, 4), (2, 4)]
    assert report.witnesses[1] == (0,)
    assert report.lower_bound
    with pytest.raises(InputError):
        sstar_bounded(rotation_third, 0, F(1, 4), 2)


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [F(1, 3), F(2, 5)])
def test_rotation_sstar_stays_below_the_homeomorphism_bound(alpha):
    report = sstar_bounded(models.rotation(alpha), 4, F(1, 4), 8)
    assert all(value <= homeomorphism_separated_bound(n, F(1, 4)) for n, value in report.values)


@pytest.mark.slow
def test_rotation_pattern_growth_is_polynomial(rotation_third):
    report = pattern_growth(rotation_third, halves(), 6, 10)
    assert report.verdict == POLYNOMIAL
    assert report.monotone


def _exhaustive_pattern(f, cover, n, T):
    best, argmax = -1, ()
    for t in combinations_with_replacement(range(T + 1), n):
        if f.is_surjective and t[0] != 0:
            continue
        value = join_count(f, cover, t)
        if value > best:
            best, argmax = value, t
    return best, argmax


@pytest.mark.parametrize("make", [models.doubling, lambda: models.rotation(F(1, 3)), lambda: models.bump(F(3, 4)),
                                  models.attracting_two_cycle_map])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_pruned_pattern_search_matches_exhaustive_search(make, n):
    f = make()
    result = pattern_complexity(f, halves(), n, 4)
    assert (result.value, result.argmax) == _exhaustive_pattern(f, halves(), n, 4)


@given(circle_maps(max_inner=1, degrees=(0, 1, 2)),
       st.lists(st.integers(min_value=0, max_value=2), max_size=2),
       st.lists(st.integers(min_value=0, max_value=2), min_size=1, max_size=2))
def test_join_count_grows_with_more_times(f, times, extra):
    assert join_count(f, halves(), times) <= join_count(f, halves(), times + extra)


@given(circle_maps(max_inner=1, degrees=(0, 1, 2)), st.integers(min_value=1, max_value=2),
       st.lists(st.integers(min_value=0, max_value=2), min_size=1, max_size=2))
def test_joins_of_a_power_match_scaled_times(f, k, times):
    assert join_count(f.power(k), halves(), times) == join_count(f, halves(), [k * t for t in times])


@pytest.mark.slow
def test_doubling_entropy_rate_at_ten(doubling):
    report = entropy_growth(doubling, halves(), 10)
    assert report.monotone
    assert abs(report.rates[10] - math.log(2)) <= 0.05


@pytest.mark.slow
def test_doubling_pattern_growth_is_super_polynomial(doubling):
    report = pattern_growth(doubling, halves(), 6, 10)
    assert report.values == [(n, 2 ** n) for n in range(1, 7)]
    assert report.verdict == SUPER_POLYNOMIAL
