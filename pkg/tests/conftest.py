from collections import OrderedDict

import pytest

_results = OrderedDict()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    name = marker.args[0]
    ok = _results.setdefault(name, True)
    if report.failed or (report.when == "call" and report.skipped):
        ok = False
    _results[name] = ok


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _results.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
