from fractions import Fraction

import pytest

from src.config import DEFAULT_BUDGETS, Budgets
from src.errors import (ComplexityBudgetExceeded, DegenerateInput, InputError, MapSyntaxError,
                        PrecisionBudgetExceeded, ToolkitError)


def test_defaults():
    assert DEFAULT_BUDGETS.max_breakpoints == 10 ** 6
    assert DEFAULT_BUDGETS.radii == (Fraction(1, 8), Fraction(1, 32), Fraction(1, 128))
    assert DEFAULT_BUDGETS.threads >= 1
    assert DEFAULT_BUDGETS.progress is False


def test_with_overrides_ignores_none():
    b = DEFAULT_BUDGETS.with_overrides(max_breakpoints=50, threads=None)
    assert b.max_breakpoints == 50
    assert b.threads == DEFAULT_BUDGETS.threads
    assert DEFAULT_BUDGETS.max_breakpoints == 10 ** 6


def test_from_env_reads_fields_and_aliases():
    env = {
        "CDYN_BUDGET_BREAKPOINTS": "1000",
        "CDYN_HORIZON": "3",
        "CDYN_SHADOW_DELTA": "1/50",
        "CDYN_RADII": "1/4, 1/16",
        "CDYN_PROGRESS": "yes",
    }
    b = Budgets.from_env(env)
    assert b.max_breakpoints == 1000
    assert b.extensibility_horizon == 3
    assert b.shadow_delta == Fraction(1, 50)
    assert b.radii == (Fraction(1, 4), Fraction(1, 16))
    assert b.progress is True


def test_field_name_wins_over_alias():
    b = Budgets.from_env({"CDYN_MAX_BREAKPOINTS": "7", "CDYN_BUDGET_BREAKPOINTS": "9"})
    assert b.max_breakpoints == 7


def test_bad_env_value_is_an_input_error():
    with pytest.raises(InputError):
        Budgets.from_env({"CDYN_TUPLE_CAP": "many"})


def test_float_tolerance_is_rejected():
    with pytest.raises(InputError):
        DEFAULT_BUDGETS.with_overrides(shadow_delta=0.01)


def test_error_hierarchy():
    assert issubclass(DegenerateInput, InputError)
    assert issubclass(PrecisionBudgetExceeded, ComplexityBudgetExceeded)
    assert issubclass(ComplexityBudgetExceeded, ToolkitError)
    e = MapSyntaxError("bad token", line=3, column=5)
    assert (e.line, e.column) == (3, 5)
    assert "line 3, column 5" in str(e)
    budget = ComplexityBudgetExceeded("too many", budget=10, partial=[1, 2])
    assert budget.partial == [1, 2] and budget.analysis == {}
