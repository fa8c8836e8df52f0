import itertools
from fractions import Fraction

import pytest

from pseudoalg.constructions import (abelian_algebra, curr_build, field_k, matrix_algebra, sl2,
                                     w_build)
from pseudoalg.errors import RankMismatch
from pseudoalg.hopf import HopfAlgebra, abelian
from pseudoalg.iso import (IsoResult, _elimination, current_iso_check, find_isomorphism,
                           invariants, is_homomorphism, structure_of)
from pseudoalg.lin import mat_inverse
from pseudoalg.oracle import ordinary_tkk
from pseudoalg.tkk import tkk_build
from pseudoalg.varieties import check_variety


def _transport(c, B):
    """Structure constants of the same algebra in the basis given by the columns of B."""
    n = len(c)
    Bi = mat_inverse(B)
    cols = [[Fraction(B[r][i]) for r in range(n)] for i in range(n)]

    def br(x, y):
        out = [Fraction(0)] * n
        for i, j, k in itertools.product(range(n), repeat=3):
            out[k] += x[i] * y[j] * c[i][j][k]
        return out

    out = [[None] * n for _ in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        v = br(cols[i], cols[j])
        out[i][j] = [sum(Bi[k][r] * v[r] for r in range(n)) for k in range(n)]
    return out


@pytest.fixture(scope="module")
def H():
    return HopfAlgebra(abelian(1), 4)


def test_identity(H):
    P = curr_build(H, sl2())
    res = current_iso_check(P, sl2())
    assert res.found
    assert res.matrix == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]


def test_tkk_of_field_is_sl2(H):
    T = tkk_build(curr_build(H, field_k()), 2).algebra
    assert check_variety(T, "lie").passed
    res = current_iso_check(T, sl2())
    assert res.found
    assert is_homomorphism(res.matrix, structure_of(T), sl2().structure())


def test_not_isomorphic(H):
    res = current_iso_check(curr_build(H, sl2()), abelian_algebra(3))
    assert not res.found and res.reason == "invariants differ"
    assert res.lines() == ["ISO: FAIL invariants differ"]


def test_rank_mismatch(H):
    with pytest.raises(RankMismatch):
        current_iso_check(curr_build(H, sl2()), field_k())


def test_nontrivial_h_parts(H1):
    res = current_iso_check(w_build(H1), field_k())
    assert res.reason == "table has non-trivial H-parts"


def test_scrambled_sl2_by_elimination():
    c = sl2().structure()
    B = [[1, 1, 0], [0, 1, 2], [1, 0, 1]]
    scrambled = _transport(c, B)
    M = _elimination(scrambled, c)
    assert M is not None
    assert is_homomorphism(M, scrambled, c)
    res = find_isomorphism(scrambled, c)
    assert res.found


def test_elimination_refutes():
    # sl2 against the non-split form so(3) has no rational isomorphism
    so3 = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        so3[i][j][k] = Fraction(1)
        so3[j][i][k] = Fraction(-1)
    res = find_isomorphism(so3, sl2().structure())
    assert not res.found and res.reason == "no isomorphism"


def test_invariants_values():
    assert invariants(sl2().structure()) == (3, 0, 3)
    assert invariants(abelian_algebra(2).structure()) == (0, 2, 0)


def test_lines_format():
    res = IsoResult([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1, 2)]])
    assert res.lines() == ["ISO: FOUND", "MATRIX: 1 0", "MATRIX: 0 1/2"]


def test_oracle_tkk_of_field():
    T = ordinary_tkk(field_k())
    assert find_isomorphism(T.structure(), sl2().structure(), T.sectors, sl2().sectors).found


def test_matrix_commutator_not_sl2(H):
    # M2 as a Lie algebra under the commutator has a centre
    M = matrix_algebra(2)
    c = M.structure()
    lie = [[[c[i][j][k] - c[j][i][k] for k in range(4)] for j in range(4)] for i in range(4)]
    assert invariants(lie)[1] == 1
