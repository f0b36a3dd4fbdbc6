import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}
_outcomes = {}


def pytest_itemcollected(item):
    mark = item.get_closest_marker("acceptance")
    if mark:
        _criteria[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes.setdefault(report.nodeid, report.outcome)


def pytest_terminal_summary(terminalreporter):
    rows = sorted((*_criteria[k], v) for k, v in _outcomes.items())
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for n, label, outcome in rows:
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
