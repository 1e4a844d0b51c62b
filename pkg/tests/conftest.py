import numpy as np
import pytest

from qcrb.fock import PhysicalConstants
from qcrb.states import thermal_params_from_kappas


@pytest.fixture(scope="session")
def eb1():
    """lam^2 = 2: the unit choice under which the tabulated Fisher values hold."""
    return PhysicalConstants(1.0)


@pytest.fixture(scope="session")
def eb2():
    """lam = 1."""
    return PhysicalConstants(2.0)


@pytest.fixture(scope="session")
def fig2_params():
    return thermal_params_from_kappas(1.0, 0.5)


def max_rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """``criterion(n, ok, detail)`` records one acceptance line and asserts ``ok``."""

    def record(number: int, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        _CRITERIA[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[number])
