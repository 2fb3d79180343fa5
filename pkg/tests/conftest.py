import os
import sys

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from explosion.core import FiniteStructure  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--jobs", type=int, default=max(1, min(4, os.cpu_count() or 1)),
                     help="worker processes for the exhaustive battery")


@pytest.fixture(scope="session")
def jobs(request):
    return request.config.getoption("--jobs")


@st.composite
def finite_structures(draw, min_n=1, max_n=4, with_op=False):
    n = draw(st.integers(min_n, max_n))
    N = 1 << n
    # bias entries toward the full carrier so trivial sets are common
    entry = st.one_of(st.just(N - 1), st.integers(0, N - 1))
    table = draw(st.lists(entry, min_size=N, max_size=N))
    ops = {}
    if with_op:
        ops["f"] = tuple(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))
    return FiniteStructure(n, tuple(table), ops)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "LINES", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LINES:
        terminalreporter.write_line(line)
