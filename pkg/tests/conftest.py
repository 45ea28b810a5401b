import re

import pytest


def pytest_addoption(parser):
    parser.addoption("--run-large", action="store_true", default=False, help="also run the n = 9, 10 matrix checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-large"):
        return
    skip = pytest.mark.skip(reason="opt-in: pass --run-large")
    for item in items:
        if "large" in item.keywords:
            item.add_marker(skip)


_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = f"criterion {m.group(1)} ({m.group(2).replace('_', ' ')})"
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        if _criteria.get(key) != "FAIL":
            _criteria[key] = outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k.split()[1])):
        terminalreporter.write_line(f"{_criteria[key]:4}  {key}")
