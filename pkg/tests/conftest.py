import random

import pytest

from tameauto.bipoly import BiPoly
from tameauto.coefficients import RatFunc, TPoly

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20240917)


def ring_vars(p, ring="R"):
    """x, y and t as polynomials."""
    return BiPoly.x(p, ring), BiPoly.y(p, ring), BiPoly.const(TPoly.t(p), p, ring)


def tp(coeffs, p):
    return TPoly(coeffs, p)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
