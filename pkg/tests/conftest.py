"""Shared fixtures and the acceptance-criteria reporter.

Acceptance tests record one line per criterion; the lines are printed in a
dedicated section after the run (so ``pytest tests/test_acceptance.py``
always ends with the per-criterion pass/fail table).
"""

from __future__ import annotations

import numpy as np
import pytest

_RESULTS: list[tuple[str, str, str]] = []


@pytest.fixture(scope="session")
def record_criterion():
    def _record(cid: str, status: str, detail: str = "") -> None:
        _RESULTS.append((cid, status, detail))

    return _record


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, status, detail in _RESULTS:
        line = f"{cid}: {status}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_full_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


@pytest.fixture
def full_matrix():
    return random_full_matrix
