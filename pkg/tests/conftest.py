import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

# criterion number -> (title, passed so far)
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = m.args


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None or (report.when != "call" and report.passed):
        return
    n, title = marker
    prev_ok = _CRITERIA.get(n, (title, True))[1]
    _CRITERIA[n] = (title, prev_ok and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}: {title}")
