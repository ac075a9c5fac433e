import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from octorand.sampling import RngStream

ACCEPTANCE_LINES: list[str] = []

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
octonions = arrays(np.float64, 8, elements=finite)


@pytest.fixture
def stream():
    return RngStream(20240601, 0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
