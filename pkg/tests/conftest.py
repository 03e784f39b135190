import time

import pytest
from hypothesis import strategies as st

from alexlab.bigpoly import IntPoly

SUITE_BUDGET_SECONDS = 120.0
ACCEPTANCE_LINES: list[str] = []
_START = time.perf_counter()


def int_polys(max_degree=5, height=9, nonzero=True):
    strat = st.lists(st.integers(-height, height), min_size=1, max_size=max_degree + 1).map(IntPoly)
    if nonzero:
        strat = strat.filter(lambda p: not p.is_zero())
    return strat


@pytest.fixture
def acceptance_log():
    def log(criterion, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    elapsed = time.perf_counter() - _START
    terminalreporter.write_line(f"suite wall time {elapsed:.1f}s (budget {SUITE_BUDGET_SECONDS:.0f}s)")


def pytest_sessionfinish(session, exitstatus):
    # the full-suite runtime budget is itself an acceptance requirement
    if time.perf_counter() - _START > SUITE_BUDGET_SECONDS and not session.config.option.collectonly:
        session.exitstatus = 1
