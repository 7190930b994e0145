from fractions import Fraction
from itertools import product

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def hj_value(chain):
    """[k_1..k_n] by plain recursion on Fractions, independent of the library."""
    if len(chain) == 1:
        return Fraction(chain[0])
    return chain[0] - 1 / hj_value(chain[1:])


def fraction_pivots(m):
    """Gaussian elimination pivots in row order, plain Fractions, dense."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    out = []
    for p in range(n):
        piv = a[p][p]
        out.append(piv)
        if piv == 0:
            break
        for r in range(p + 1, n):
            f = a[r][p] / piv
            if f:
                for c in range(p, n):
                    a[r][c] -= f * a[p][c]
    return out


def chains_upto(max_len, max_weight):
    for n in range(1, max_len + 1):
        yield from product(range(2, max_weight + 1), repeat=n)


@pytest.fixture
def hj():
    return hj_value


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
