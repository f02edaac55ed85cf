import os

import mpmath
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("LWPOT_HYPOTHESIS", "default"))

mpmath.mp.dps = 40


@pytest.fixture
def mp():
    with mpmath.workdps(40):
        yield mpmath


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def record():
    """Store and print the PASS/FAIL line of one acceptance criterion.

    Usage: ``record(n, ok, detail)`` then assert ``ok``; the line is written
    before the assertion so failures are reported with their measurement.
    """

    def _record(number: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
