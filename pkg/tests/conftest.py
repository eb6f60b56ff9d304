from __future__ import annotations

import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# Property tests mix numpy work with pure python; wall-clock deadlines only
# add flakes on loaded CI hosts.
settings.register_profile(
    "colorerase",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("colorerase")

CORPUS_DIR = Path(__file__).parent / "data" / "corpus"

#: PASS/FAIL lines recorded by the acceptance tests; echoed after the run.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    assert CORPUS_DIR.is_dir(), "bundled corpus missing; run tests/data/make_corpus.py"
    return CORPUS_DIR


class Criterion:
    """Context manager recording a PASS/FAIL summary line per criterion."""

    def __init__(self, name: str, budget_s: float):
        self.name = name
        self.budget_s = budget_s
        self.detail = ""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        parts = [f"{elapsed:.1f}s of {self.budget_s:.0f}s budget"]
        if self.detail:
            parts.insert(0, self.detail)
        line = f"{status}  {self.name}  ({'; '.join(parts)})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return False

    def check_budget(self):
        assert time.perf_counter() - self.t0 < self.budget_s, "over time budget"


@pytest.fixture()
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
