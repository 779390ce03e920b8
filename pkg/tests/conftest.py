import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(number, title): acceptance-gate check, one summary line each")


_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    marker = getattr(report, "_criterion", None)
    if marker is not None:
        number, title = marker
        _results[number] = (title, report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report._criterion = (marker.args[0], marker.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_results):
        title, outcome = _results[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} [{verdict}] {title}")
