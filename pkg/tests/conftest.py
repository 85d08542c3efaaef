import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion\[(\d+)\]$")
_outcomes = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    number = int(m.group(1))
    if report.when == "call" or report.failed:
        _outcomes[number] = "PASS" if report.passed and _outcomes.get(number) != "FAIL" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        terminalreporter.write_line(f"Criterion {number}: {_outcomes[number]} ({CRITERIA[number][0]})")
