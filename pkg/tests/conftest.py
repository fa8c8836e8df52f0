import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from pseudoalg.hopf import HopfAlgebra, LieData, abelian, aff1

settings.register_profile(
    "pseudoalg", deadline=None, max_examples=40, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pseudoalg")


def sl2_lie():
    # e1 = e, e2 = h, e3 = f
    return LieData.from_pairs(3, {(0, 1): {0: -2}, (1, 2): {2: -2}, (0, 2): {1: 1}})


@pytest.fixture(scope="session")
def H1():
    return HopfAlgebra(abelian(1), 6)


@pytest.fixture(scope="session")
def H2():
    return HopfAlgebra(abelian(2), 6)


@pytest.fixture(scope="session")
def Haff():
    return HopfAlgebra(aff1(), 6)


@pytest.fixture(scope="session")
def Hsl2():
    return HopfAlgebra(sl2_lie(), 4)


def F(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
