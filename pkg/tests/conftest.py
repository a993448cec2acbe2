"""Shared fixtures and the acceptance summary printed at the end of a run."""
import os

import numpy as np
import pytest
from hypothesis import settings

from hadamard_ops import PairingConfig, TestFunction

settings.register_profile("default", deadline=None, max_examples=40, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion name -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def cfg():
    return PairingConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def bump():
    return TestFunction.bump(1.5, 0.6)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
