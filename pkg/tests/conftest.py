import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marks = getattr(report, "criterion", None)
    if marks:
        _criteria.append((marks, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark:
        rep.criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


def hexwords(xs):
    return tuple(int(x, 16) for x in xs)


@pytest.fixture(scope="session")
def reference():
    return json.loads((DATA / "reference_intermediates.json").read_text())


@pytest.fixture(scope="session")
def reference_vectors_path():
    return DATA / "reference_vectors.jsonl"
