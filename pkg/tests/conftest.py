"""Shared test plumbing: the acceptance-criterion result board.

Acceptance tests record one line per criterion; the terminal summary prints
them all at the end of the run so the verdicts are visible in one block.
"""

import pytest

_CRITERION_LINES: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    verdict = "PASS" if passed else "FAIL"
    _CRITERION_LINES[number] = f"criterion {number:2d}: {verdict} - {detail}"


@pytest.fixture
def criteria_board():
    return record_criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERION_LINES):
        terminalreporter.write_line(_CRITERION_LINES[number])
