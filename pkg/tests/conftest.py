import os

import hypothesis
import pytest
from hypothesis import HealthCheck

from src.dynamics import models

hypothesis.settings.register_profile(
    "ci", max_examples=200, deadline=None,
    suppress_health_check=[*hypothesis.settings.default.suppress_health_check, HealthCheck.too_slow])
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def doubling():
    return models.doubling()


@pytest.fixture
def rotation_third():
    return models.rotation("1/3")


@pytest.fixture
def identity():
    return models.identity()


@pytest.fixture
def reflection():
    return models.reflection()


@pytest.fixture
def low_bump():
    return models.bump("3/4")


@pytest.fixture
def high_bump():
    return models.bump("3/2")
