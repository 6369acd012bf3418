import pytest
from gmpy2 import mpq

from plval.simplicial import SimplicialComplex


def path_complex(points):
    """1-dimensional path through the given sorted coordinates."""
    pts = [(mpq(p),) for p in points]
    return SimplicialComplex.from_maximal(1, pts, [(i, i + 1) for i in range(len(pts) - 1)])


@pytest.fixture
def edge():
    return path_complex([0, 1])


@pytest.fixture
def path3():
    return path_complex([0, mpq(1, 2), 1])


@pytest.fixture
def path5():
    return path_complex([mpq(i, 4) for i in range(5)])


@pytest.fixture
def triangle():
    return SimplicialComplex.from_maximal(2, [(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
