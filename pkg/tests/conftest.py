from __future__ import annotations

import sys

_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if name.startswith("test_criterion_") and (report.when == "call" or report.failed):
        number = int(name.split("_")[2])
        if _outcomes.get(number) != "failed":
            _outcomes[number] = report.outcome


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in module.CRITERIA.items():
        if number not in _outcomes:
            continue
        if number in module.RESULTS:
            passed, detail = module.RESULTS[number]
        else:
            passed, detail = False, "errored before reaching a verdict"
        passed = passed and _outcomes[number] == "passed"
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {title}: {detail}")
