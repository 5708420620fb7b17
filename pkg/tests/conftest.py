import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from rcckit.graph import Graph  # noqa: E402


@st.composite
def graphs(draw, min_n=1, max_n=20):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph.from_edges(np.array(chosen, dtype=np.int64).reshape(-1, 2), n=n)


@pytest.fixture
def k4_pendant():
    return Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])


@pytest.fixture
def star3():
    return Graph.from_edges([(0, 1), (0, 2), (0, 3)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
