import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from schutz import examples  # noqa: E402

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.fixture
def halt1():
    return examples.M_HALT1


@pytest.fixture
def loop():
    return examples.M_LOOP


@pytest.fixture
def three():
    return examples.M_THREE


@pytest.fixture
def transfer():
    return examples.M_TRANSFER


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, title in CRITERIA:
        if name not in _ACCEPTANCE:
            continue
        outcome, secs = _ACCEPTANCE[name]
        word = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        tr.write_line(f"{word}  {title}  ({secs:.1f}s)")
