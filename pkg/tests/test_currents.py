import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudoalg.constructions import curr_build, sl2
from pseudoalg.hopf import HopfAlgebra, abelian, aff1

from conftest import sl2_lie
from oracles import current_bracket_closed
from randgen import module_element

SEEDS = st.integers(0, 10 ** 6)


@pytest.fixture(scope="module", params=["aff1", "sl2"])
def H(request):
    lie = aff1() if request.param == "aff1" else sl2_lie()
    return HopfAlgebra(lie, 6 if request.param == "aff1" else 4)


def test_closed_formula_with_antipode(H):
    g = sl2()
    P = curr_build(H, g)
    rng = random.Random(1)
    for _ in range(25):
        a = module_element(rng, H.dim, 3, 2)
        b = module_element(rng, H.dim, 3, 2)
        assert P.mul_elements(a, b) == current_bracket_closed(H, g, a, b, explicit_antipode=True)


@given(SEEDS)
def test_closed_formula_abelian(seed):
    H = HopfAlgebra(abelian(2), 6)
    g = sl2()
    rng = random.Random(seed)
    a, b = module_element(rng, 2, 3, 3), module_element(rng, 2, 3, 3)
    assert curr_build(H, g).mul_elements(a, b) == current_bracket_closed(H, g, a, b)


def test_signs_differ_off_abelian():
    H = HopfAlgebra(aff1(), 6)
    g = sl2()
    # S(e^(1,1)) = e2 e1 = e^(1,1) - e^(0,1), not e^(1,1)
    a, b = {((0, 0), 0): 1}, {((1, 1), 2): 1}
    assert curr_build(H, g).mul_elements(a, b) != current_bracket_closed(H, g, a, b)


@given(SEEDS)
def test_commuting_coefficients_give_zero(seed):
    H = HopfAlgebra(aff1(), 6)
    g = sl2()
    P = curr_build(H, g)
    rng = random.Random(seed)
    x = [rng.randint(-2, 2) for _ in range(3)]
    a = {(al, i): c * x[i] for (al, _), c in module_element(rng, 2, 1, 3).items()
         for i in range(3) if x[i]}
    b = {(be, i): c * x[i] for (be, _), c in module_element(rng, 2, 1, 3).items()
         for i in range(3) if x[i]}
    assert not P.mul_elements(a, b)
