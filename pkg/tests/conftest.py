import sys

import pytest

from scs_resilience.generators import cycle, path
from scs_resilience.geometry import make_instance


@pytest.fixture
def square():
    return cycle(4)


@pytest.fixture
def path3():
    return path(3)


@pytest.fixture
def pair():
    return make_instance([(0.0, 0.0), (2.2, 0.0)], 0.3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
