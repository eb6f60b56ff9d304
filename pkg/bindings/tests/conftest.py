from __future__ import annotations

import time

import pytest

#: PASS/FAIL lines recorded by the equivalence tests; echoed after the run.
SUMMARY_LINES: list[str] = []


class Check:
    """Context manager recording a PASS/FAIL summary line."""

    def __init__(self, name: str):
        self.name = name
        self.detail = ""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        detail = f"{self.detail}; " if self.detail else ""
        line = f"{status}  {self.name}  ({detail}{elapsed:.1f}s)"
        SUMMARY_LINES.append(line)
        print(line)
        return False


@pytest.fixture()
def check():
    return Check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if SUMMARY_LINES:
        terminalreporter.write_sep("-", "binding acceptance")
        for line in SUMMARY_LINES:
            terminalreporter.write_line(line)
