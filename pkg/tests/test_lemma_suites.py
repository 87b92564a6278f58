from fractions import Fraction
from pathlib import Path

import pytest

from src.analysis.lemma_suites import (SUITES, HorseshoeEntropySuite, IntervalPointsSuite, InvariantIntervalSuite,
                                       NonsepPowerSuite, PeriodCorrespondenceSuite, PowerTransformSuite,
                                       SeparatedBoundSuite, get_suite, run_suite)
from src.config import Budgets
from src.dynamics import models
from src.errors import InputError

F = Fraction

MAPS = Path(__file__).resolve().parent.parent / "maps"


def test_registry():
    assert set(SUITES) == {"invariant-interval", "period-correspondence", "power-transform", "separated-bound",
                           "horseshoe-entropy", "interval-points", "nonsep-power"}
    assert get_suite("interval-points", horizon=3).horizon == 3
    with pytest.raises(InputError):
        get_suite("no-such-suite")


def test_invariant_interval_suite(low_bump):
    result = InvariantIntervalSuite().run(low_bump)
    assert result["case"] == "Deg0"
    assert result["passed"]


def test_run_file_records_map_and_time():
    result = InvariantIntervalSuite().run_file(str(MAPS / "deg1_fixed.cmap"))
    assert result["map"] == "deg1-fixed"
    assert result["case"] == "Deg1"
    assert (result["a"], result["b"]) == (0, F(5, 4))
    assert result["elapsed"] >= 0
    assert result["passed"]


def test_period_correspondence_suite(reflection):
    result = PeriodCorrespondenceSuite(N=4).run(reflection)
    assert result["case"] == "DegMinus1"
    assert result["passed"]
    assert result["only_lifted"] == [] and result["only_circle"] == []


def test_power_transform_suite(doubling):
    result = PowerTransformSuite().run(doubling)
    assert result["forward"]["premise"] and result["forward"]["conclusion"]
    assert result["backward"]["reduced"] == (0, 1, 2, 3)
    assert result["passed"]


def test_separated_bound_suite(rotation_third, doubling):
    result = SeparatedBoundSuite(n_max=2, T=2).run(rotation_third)
    assert [r["sstar"] for r in result["rows"]] == [4, 4]
    assert [r["bound"] for r in result["rows"]] == [5, 10]
    assert result["passed"]
    with pytest.raises(InputError):
        SeparatedBoundSuite().run(doubling)


def test_horseshoe_entropy_suite(doubling, rotation_third):
    result = HorseshoeEntropySuite(n_max=4).run(doubling)
    assert result["certificate"]["n"] == 1
    assert result["verified"]
    assert result["passed"]
    vacuous = HorseshoeEntropySuite().run(rotation_third)
    assert vacuous["vacuous"] and vacuous["passed"]


def test_interval_points_suite():
    result = IntervalPointsSuite(horizon=2).run(models.two_interval_cycle_map())
    assert not result["vacuous"]
    assert any(r["period"] == 2 for r in result["rows"])
    assert result["passed"]


def test_nonsep_power_suite():
    suite = NonsepPowerSuite(p=2, depth=1, pairs=[(F(3, 16), F(11, 16))])
    result = suite.run(models.two_interval_cycle_map(), Budgets(extensibility_horizon=2))
    assert result["rows"][0]["f"] == "Separable"
    assert result["passed"]


def test_run_suite_tags_the_result(doubling):
    result = run_suite("power-transform", doubling, p=2)
    assert result["lemma"] == "power-transform"
    assert result["passed"]
