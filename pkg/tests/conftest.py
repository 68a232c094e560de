"""Shared test plumbing: collects acceptance verdicts and prints one
pass/fail line per criterion at the end of the run."""

import pytest

ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture
def record_criterion():
    def record(name: str, ok: bool) -> None:
        ACCEPTANCE_RESULTS[name] = bool(ok)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'}")
