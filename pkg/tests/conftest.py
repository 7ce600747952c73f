import os

import pytest
from hypothesis import HealthCheck, settings

from precy import fixtures as fx
from precy.double_poisson import DoubleBracket

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def dual():
    return fx.dual_numbers()


@pytest.fixture(scope="session")
def dual_bracket(dual):
    return DoubleBracket(dual, fx.dual_numbers_bracket_entries())


@pytest.fixture(scope="session")
def bundled():
    return {name: fx.load_bundled(name) for name in fx.BUNDLED}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
