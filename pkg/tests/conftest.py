"""Shared fixtures and the acceptance summary printed after a run."""

import pytest

from hyperdyn.library import finite_default, finite_extended

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, float]] = {}


@pytest.fixture(scope="session")
def finite_systems():
    return finite_default()


@pytest.fixture(scope="session")
def extended_systems():
    return finite_extended()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, seconds = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} ({seconds:.1f}s) {title}")
