from fractions import Fraction
from pathlib import Path

import pytest

from src.dynamics import models
from src.dynamics.lifting import CircleMapPL, PLLifting
from src.dynamics.periodic import period_set
from src.dynamics.rotation import rotation_bounds
from src.storage.map_files import load_map

F = Fraction

MAPS = Path(__file__).resolve().parent.parent / "maps"

DEGREES = {
    "identity": 1,
    "doubling": 2,
    "reflection": -1,
    "n-map": 0,
    "deg1-fixed": 1,
    "two-cycle": 0,
    "attracting-fixed": 0,
    "interval-cycle": 0,
    "period-two-homeo": 1,
    "period-doubling": 0,
}


@pytest.mark.parametrize("name", sorted(models.MODELS))
def test_registry_builds_every_model(name):
    f = models.MODELS[name]()
    assert isinstance(f, CircleMapPL)
    assert f.degree == DEGREES[name]


def test_shipped_period_doubling_file_matches_model():
    assert load_map(str(MAPS / "period_doubling3.cmap")) == models.period_doubling_model(3)


def test_doubling_operator_renormalizes():
    g = PLLifting.from_points(models.N_MAP)
    G = PLLifting.from_points(models.doubling_operator(models.N_MAP))
    for x in (F(0), F(1, 27), F(1, 18), F(1, 9), F(1, 5), F(1, 3)):
        assert G.eval(G.eval(x)) == g.eval(3 * x) / 3
    assert models.period_doubling_table(0) == models.N_MAP


def test_model_pairs_scale_with_depth():
    pairs = models.model_pairs(3)
    assert pairs["T"] == 32
    assert pairs["m_target"] == 3
    assert pairs["nonseparable"] == (F(1, 216), F(1, 72))
    assert pairs["map"] == models.period_doubling_model(3)


def test_homeomorphism_models():
    assert models.period_two_homeomorphism().is_homeomorphism
    h = models.conjugated_rotation(F(1, 3))
    assert h.is_homeomorphism
    assert rotation_bounds(h.lifting, 3).exact == F(1, 3)


def test_small_period_sets():
    assert period_set(models.n_map(), 3) == {1, 2, 3}
    assert period_set(models.attracting_two_cycle_map(), 4) == {1, 2}


@pytest.mark.slow
def test_period_doubling_periods_are_powers_of_two():
    assert period_set(models.period_doubling_model(2), 6) == {1, 2, 4}
