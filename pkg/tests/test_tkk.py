import itertools
import random
from fractions import Fraction

import pytest

from pseudoalg.constructions import (abelian_algebra, curr_build, field_k, jordan_form,
                                     matrix_algebra, sl2, w_build)
from pseudoalg.errors import JordanPreconditionFailed
from pseudoalg.hopf import HopfAlgebra, abelian, aff1
from pseudoalg.oracle import is_lie, ordinary_tkk
from pseudoalg.pseudo import CanonicalTensor, act, coefficients, sigma_act, slot_mul
from pseudoalg.tkk import (SWAP12, CendElement, apply_family, cend_apply, cend_apply_tensor,
                           cend_bracket, family_coefficients, is_pseudoderivation, left_mul,
                           mult_vector, s0_basis, sector_grammar, structure_act, tkk_build, u_op,
                           u_star)
from pseudoalg.varieties import check_variety

from randgen import module_element


@pytest.fixture(scope="module")
def K():
    return curr_build(HopfAlgebra(abelian(1), 4), field_k())


@pytest.fixture(scope="module")
def JF():
    return curr_build(HopfAlgebra(abelian(1), 4), jordan_form([[1, 0], [0, 1]]))


@pytest.fixture(scope="module")
def Waff():
    return w_build(HopfAlgebra(aff1(), 6))


def test_left_mul_examples(K, H1):
    v = K.basis_element(0)
    assert left_mul(K, v).values[0].terms == {(((0,),), (0,), 0): 1}
    assert not left_mul(K, {})
    W = w_build(H1)
    assert left_mul(W, W.basis_element(0)).values[0] == W.table[(0, 0)]


def test_cend_apply_examples(K, H1):
    ident = CendElement(K, [CanonicalTensor.from_module(K.basis_element(0)).__class__(
        2, {(((0,),), (0,), 0): Fraction(1)})])
    m = {((0,), 0): Fraction(3)}
    assert cend_apply(ident, m).terms == {(((0,),), (0,), 0): 3}
    assert not cend_apply(ident, {})
    W = w_build(H1)
    L = left_mul(W, W.basis_element(0))
    ev = act(H1, {(1,): Fraction(1)}, W.basis_element(0))
    assert cend_apply(L, ev) == slot_mul(H1, (None, {(1,): Fraction(1)}), W.table[(0, 0)])


def _direct_bracket(phi, psi, m):
    H = phi.P.hopf
    a = cend_apply_tensor(phi, cend_apply(psi, m))
    b = cend_apply_tensor(psi, cend_apply(phi, m))
    return a - sigma_act(H, SWAP12, b)


def test_cend_bracket_family_reproduces_compositions(Waff):
    P = Waff
    rng = random.Random(5)
    for _ in range(6):
        a, b = (module_element(rng, 2, 2, 1, terms=2) for _ in range(2))
        phi, psi = left_mul(P, a), left_mul(P, b)
        fam = cend_bracket(phi, psi)
        for _ in range(2):
            m = module_element(rng, 2, 2, 1, terms=2)
            assert apply_family(P, fam, m) == _direct_bracket(phi, psi, m)


def test_cend_bracket_antisymmetry(Waff):
    P = Waff
    phi, psi = left_mul(P, P.basis_element(0)), left_mul(P, P.basis_element(1, (1, 0)))
    for j in range(2):
        m = P.basis_element(j)
        lhs = apply_family(P, cend_bracket(phi, psi), m)
        rhs = apply_family(P, cend_bracket(psi, phi), m)
        assert lhs == -sigma_act(P.hopf, SWAP12, rhs)


def test_cend_bracket_examples(H1):
    C = curr_build(H1, abelian_algebra(1).__class__(["v"], {(0, 0): {0: Fraction(1)}}))
    La = left_mul(C, C.basis_element(0))
    assert cend_bracket(La, La) == {}
    M = curr_build(H1, matrix_algebra(2))
    fam = cend_bracket(left_mul(M, M.basis_element(0)), left_mul(M, M.basis_element(1)))
    assert set(fam) == {(0,)}
    assert fam[(0,)] == left_mul(M, M.basis_element(1))


def test_pseudoderivation_examples(K):
    assert is_pseudoderivation(K, CendElement.zero(K)).passed
    v = K.basis_element(0)
    for chi in family_coefficients(K, cend_bracket(left_mul(K, v), left_mul(K, v))).values():
        assert is_pseudoderivation(K, chi).passed
    result = is_pseudoderivation(K, left_mul(K, v))
    assert not result.passed and result.witness == (0, 0)
    assert result.line(["v"]).startswith("pseudoderivation: FAIL tuple=(v,v)")


def test_derivation_lemmas_on_jf(JF):
    P = JF
    coeffs = []
    for i, j in itertools.product(range(P.rank), repeat=2):
        fam = cend_bracket(left_mul(P, P.basis_element(i)), left_mul(P, P.basis_element(j)))
        for chi in family_coefficients(P, fam).values():
            assert is_pseudoderivation(P, chi).passed
            coeffs.append(chi)
    assert coeffs
    for T1, T2 in itertools.islice(itertools.combinations(coeffs, 2), 6):
        for chi in family_coefficients(P, cend_bracket(T1, T2)).values():
            assert is_pseudoderivation(P, chi).passed


def test_u_op_examples(K, JF):
    v = K.basis_element(0)
    U = coefficients(K.hopf, u_op(K, v, v))
    assert U == {(0,): mult_vector(v)}
    assert not u_op(K, {}, v)
    P = JF
    H = P.hopf
    for i, j in itertools.product(range(P.rank), repeat=2):
        a, b = P.basis_element(i), P.basis_element(j)
        total = u_op(P, a, b) + sigma_act(H, (1, 0), u_op(P, b, a))
        ab = P.mul_elements(a, b)
        twice = CanonicalTensor(2, {(s, beta, ("m", k)): 2 * c
                                    for (s, beta, k), c in ab.terms.items()})
        assert total == twice


def test_u_star_is_swapped_u(JF):
    P = JF
    for i, j in itertools.product(range(P.rank), repeat=2):
        a, b = P.basis_element(i), P.basis_element(j)
        assert u_star(P, a, b) == -sigma_act(P.hopf, (1, 0), u_op(P, b, a))
    a = {((1,), 1): Fraction(2), ((0,), 0): Fraction(1)}
    b = {((2,), 2): Fraction(-1)}
    assert u_star(P, a, b) == -sigma_act(P.hopf, (1, 0), u_op(P, b, a))


def test_s0_basis_examples(K, JF, H1):
    s0 = s0_basis(K, 2)
    assert s0.rank == 1
    assert s0.generators[0] == mult_vector(K.basis_element(0))
    assert s0_basis(curr_build(H1, abelian_algebra(2)), 2).rank == 0
    oracle = ordinary_tkk(jordan_form([[1, 0], [0, 1]]))
    assert s0_basis(JF, 2).rank == oracle.sectors.count("0")


def test_tkk_of_field(K):
    T = tkk_build(K, 2)
    assert T.algebra.rank == 3
    assert T.algebra.sectors == ["-", "0", "+"]
    assert check_variety(T.algebra, "lie").passed
    assert sector_grammar(T) is None
    assert T.embedding(0) == mult_vector(K.basis_element(0))
    assert [T.minus(0), T.s0_index(0), T.plus(0)] == [0, 1, 2]


def test_tkk_of_zero_algebra(H1):
    T = tkk_build(curr_build(H1, abelian_algebra(1)), 2)
    assert T.algebra.rank == 2
    assert not any(T.algebra.table.values())


def test_tkk_precondition(H1):
    with pytest.raises(JordanPreconditionFailed):
        tkk_build(curr_build(H1, sl2()), 2)


def test_separation(JF):
    T = tkk_build(JF, 2)
    P = JF
    rng = random.Random(2)
    for _ in range(5):
        coeffs = [Fraction(rng.randint(-2, 2)) for _ in T.s0.generators]
        if not any(coeffs):
            continue
        sigma = {}
        for c, g in zip(coeffs, T.s0.generators):
            for k, v in g.items():
                sigma[k] = sigma.get(k, 0) + c * v
        sigma = {k: v for k, v in sigma.items() if v}
        if not sigma:
            continue
        acts = [structure_act(P, sigma, P.basis_element(i)) for i in range(P.rank)]
        assert any(acts)


def test_ordinary_oracle():
    for A in (field_k(), jordan_form([[1, 0], [0, 1]]), jordan_form([[1, 0], [0, -1]])):
        T = ordinary_tkk(A)
        assert is_lie(T)
    assert ordinary_tkk(field_k()).dim == 3
    assert not is_lie(matrix_algebra(2))
