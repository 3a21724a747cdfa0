import random
import sys
from fractions import Fraction

import pytest
from hypothesis import settings

from chowkit.chow import CycleComponent, point_space
from chowkit.groebner import IdealGens
from chowkit.poly import VariableSpace, parse_poly

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def space(decl):
    """``"x:2 u0:3"`` -> VariableSpace."""
    return VariableSpace([(name, int(size)) for name, size in (item.split(":") for item in decl.split())])


def ideal(sp, *texts):
    return IdealGens(sp, [parse_poly(t, sp) for t in texts])


def component(r, n, *texts, mult=1):
    sp = point_space(r)
    return CycleComponent(r, n, ideal(sp, *texts), mult)


def rational_point(rng, r, bound=5):
    while True:
        p = [Fraction(rng.randint(-bound, bound)) for _ in range(r + 1)]
        if any(p):
            return p


@pytest.fixture
def rng():
    return random.Random(1234)


if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)  # oracles print big exact ints


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
