import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from graphspec.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    a = np.zeros((n, n), dtype=bool)
    iu = np.triu_indices(n, 1)
    a[iu] = bits
    return Graph(a | a.T)


@pytest.fixture
def c4():
    from graphspec.graph import blowup_independent, complete

    return blowup_independent(complete(2), 2)


@pytest.fixture
def diamond():
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
