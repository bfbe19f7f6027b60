import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "lower canonical basis of V^(x)3, n=2",
    2: "upper canonical basis of V^(x)3, n=2",
    3: "projected bases and F_1 edges, n=2, r=3",
    4: "S_4 projected basis table",
    5: "M_(3,1) action matrices",
    6: "Specht transition tables for (3,1) and (4,2)",
    7: "S(lam) bar-invariant, in K0 and Kinf, identity at 0 and inf, r <= 5",
    8: "T~ and T~' unitriangular with dominance support and mu leading terms, r <= 5",
    9: "duality of canonical and projected bases, n = 2, 3, r <= 4",
    10: "central idempotents, r <= 5",
    11: "two-row closed forms and projection, r <= 8",
    12: "conjecture evidence (reported)",
    13: "property battery",
}

_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    n = getattr(report, "criterion", None)
    if n is None:
        return
    failed = report.failed
    if report.when == "call" or failed:
        _outcomes.setdefault(n, []).append(not failed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {status:7s} {title}")
