import math

import numpy as np
import pytest

from symclass.wonenburger import WonenburgerTriple

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def e2_form(th1, th2, s1=-1.0, s2=-1.0):
    """Double elliptic normal form; s_i is the sign of b_i."""
    return WonenburgerTriple(
        np.diag([math.cos(th1), math.cos(th2)]),
        np.diag([s1 * math.sin(th1), s2 * math.sin(th2)]),
        np.diag([-s1 * math.sin(th1), -s2 * math.sin(th2)]),
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
