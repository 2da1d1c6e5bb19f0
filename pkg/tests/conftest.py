import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from symspread.monomial import Ring, parse_ideal  # noqa: E402


@pytest.fixture
def xyz():
    return Ring.from_names("x,y,z")


@pytest.fixture
def xy():
    return Ring.from_names("x,y")


@pytest.fixture
def triangle(xyz):
    return parse_ideal("x*y, y*z, z*x", xyz)


@pytest.fixture
def embedded(xy):
    return parse_ideal("x^2, x*y", xy)


def pytest_terminal_summary(terminalreporter):
    import gate

    lines = gate.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
