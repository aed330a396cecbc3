import re

import pytest

from coalescent import bings_house, dunce_hat, dunce_hat_with_flap

_CRITERIA = {}


@pytest.fixture(scope="session")
def dunce():
    return dunce_hat("quotient")


@pytest.fixture(scope="session")
def dunce8():
    return dunce_hat("minimal8")


@pytest.fixture(scope="session")
def bing():
    return bings_house()


@pytest.fixture(scope="session")
def flap():
    return dunce_hat_with_flap()


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        prev = _CRITERIA.get(key, True)
        _CRITERIA[key] = prev and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {n} [{name}]: {'PASS' if ok else 'FAIL'}")
