"""Shared fixtures and the acceptance-criteria summary hook."""

import numpy as np
import pytest

from critline.arithmetic import FactorSieve

_CRITERIA: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, passed: bool, detail: str):
    """Collect one acceptance-criterion verdict for the terminal summary."""
    _CRITERIA[number] = (passed, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, detail = _CRITERIA[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict} - {detail}")


@pytest.fixture(scope="session")
def small_sieve():
    return FactorSieve(20000)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
