"""Collects acceptance outcomes and prints one line per criterion at the end."""

import pytest

_results: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, label): numbered acceptance criterion")


def pytest_runtest_logreport(report):
    item_marker = getattr(report, "_acceptance", None)
    if item_marker is None:
        return
    number, label = item_marker
    if report.when == "call" or report.outcome != "passed":
        previous = _results.get(number, (label, "PASS"))[1]
        outcome = "PASS" if report.passed and previous == "PASS" else "FAIL"
        _results[number] = (label, outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result()._acceptance = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        label, outcome = _results[number]
        terminalreporter.write_line(f"criterion {number:>2} {outcome}: {label}")
