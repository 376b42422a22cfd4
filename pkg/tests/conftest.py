import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))

_AC = re.compile(r"test_acceptance\.py::test_ac(\d+)_")
_results: dict[int, list[bool]] = {}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or report.failed:
        _results.setdefault(int(m.group(1)), []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        ok = all(_results[k])
        terminalreporter.write_line(f"AC{k}: {'PASS' if ok else 'FAIL'}")
