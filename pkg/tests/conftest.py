"""Prints one PASS/FAIL line per acceptance criterion after the run."""

import re

import pytest

_OUTCOMES = {}
_DETAILS = {}

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


@pytest.fixture
def record_criterion():
    """Lets an acceptance test attach a detail string to its summary line."""

    def _record(num: int, detail: str) -> None:
        _DETAILS[num] = detail

    return _record


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.failed:
        _OUTCOMES[num] = "failed"
    elif report.when == "call" and report.passed:
        _OUTCOMES.setdefault(num, "passed")


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_OUTCOMES):
        verdict = "PASS" if _OUTCOMES[num] == "passed" else "FAIL"
        detail = _DETAILS.get(num)
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {num:02d}: {verdict}{suffix}")
