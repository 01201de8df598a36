import os

import numpy as np
import pytest

from pilotwave.ensemble import run_chain
from pilotwave.models import ExcitedStateSplitModel, GroundStateSplitModel

ACCEPTANCE_LINES = []
FULL_N = 100_000


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running (enable with PILOTWAVE_LONG=1)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ground():
    return GroundStateSplitModel()


@pytest.fixture(scope="session")
def excited():
    return ExcitedStateSplitModel()


class ChainCache:
    """Long chains shared across test modules, each computed once per session."""

    def __init__(self):
        self._chains = {}

    def get(self, model, x0, horizon, n=FULL_N):
        key = (model.name, float(x0), float(horizon))
        chain = self._chains.get(key)
        if chain is None or chain.requested < n:
            chain = run_chain(model, x0, horizon, n)
            self._chains[key] = chain
        assert chain.truncation is None, chain.truncation
        return chain.positions[:n]


@pytest.fixture(scope="session")
def chains():
    return ChainCache()


@pytest.fixture
def long_mode():
    if not os.environ.get("PILOTWAVE_LONG"):
        pytest.skip("set PILOTWAVE_LONG=1 for the 2e6-recurrence run")


def np_equal_bits(a, b):
    return np.array_equal(np.asarray(a).view(np.int64), np.asarray(b).view(np.int64))


def report(criterion, ok, detail):
    """Record and print one PASS/FAIL line for an acceptance criterion."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok
