import pytest

from mrkit.field import FieldMatrix
from mrkit.graphs import Digraph, Graph
from mrkit.index_coding import IcsiInstance

FIVE_RECEIVER_SIDE_INFO = [[2], [3], [1, 4], [5], [2, 4]]
FIVE_RECEIVER_ARCS = [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 2), (5, 4)]
RANK3_ROWS = [
    [1, 1, 0, 0, 0],
    [0, 1, 1, 0, 0],
    [1, 0, 1, 0, 0],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 1, 1],
]


@pytest.fixture
def five_receivers():
    return IcsiInstance(5, 2, FIVE_RECEIVER_SIDE_INFO)


@pytest.fixture
def side_digraph():
    return Digraph(5, FIVE_RECEIVER_ARCS)


@pytest.fixture
def rank3_matrix():
    return FieldMatrix(RANK3_ROWS, 2)


@pytest.fixture
def path3():
    return Graph(3, [(1, 2), (1, 3)])


@pytest.fixture
def graph_F():
    return Graph(6, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6)])


_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
