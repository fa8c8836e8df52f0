from fractions import Fraction
from importlib import resources

import pytest

from pseudoalg.constructions import field_k, sl2, w_build
from pseudoalg.errors import DimensionMismatch, JacobiViolation, ParseError, TableNotTotal
from pseudoalg.fileformat import (emit_file, from_ordinary, normalize_text, parse_file,
                                  to_ordinary)

CURR_K = """\
[meta]
degree_cutoff = 6
conventions = 1

[hopf]
dim = 1

[module]
rank = 1
names = v

[product]
v v = 1 (0|0|v)
"""


def _data(name):
    return resources.files("pseudoalg").joinpath("data", name).read_text(encoding="utf-8")


def test_minimal_curr_k():
    d = parse_file(CURR_K)
    P = d.algebra
    assert P.rank == 1 and P.names == ["v"]
    assert P.table[(0, 0)].terms == {(((0,),), (0,), 0): 1}
    assert d.hopf.dim == 1 and d.smash is None


def test_multi_index_length_error():
    text = CURR_K.replace("v v = 1 (0|0|v)", "v v = 1 (0,0|0|v)")
    with pytest.raises(DimensionMismatch) as info:
        parse_file(text)
    assert info.value.line == 13
    assert str(info.value).startswith("line 13:")


def test_table_not_total():
    text = CURR_K.replace("rank = 1\nnames = v", "rank = 2\nnames = v w")
    with pytest.raises(TableNotTotal) as info:
        parse_file(text)
    assert "missing row v w" in str(info.value)


def test_jacobi_violation():
    text = "[hopf]\ndim = 3\n[e1,e2] = 1 e3\n[e1,e3] = 1 e1\n"
    with pytest.raises(JacobiViolation):
        parse_file(text)


@pytest.mark.parametrize("text, line", [
    ("[hopf]\ndim = x\n", 2),
    ("[hopf]\ndim = 1\n[bogus]\n", 3),
    ("dim = 1\n", 1),
    (CURR_K.replace("v v = 1", "v u = 1"), 13),
    (CURR_K.replace("(0|0|v)", "(0|0|z)"), 13),
    (CURR_K + "v v = 0\n", 14),
])
def test_syntax_errors_carry_lines(text, line):
    with pytest.raises(ParseError) as info:
        parse_file(text)
    assert info.value.line == line


def test_cutoff_error():
    text = CURR_K.replace("(0|0|v)", "(7|0|v)")
    with pytest.raises(ParseError):
        parse_file(text)
    assert parse_file(text, degree_cutoff=8).algebra.table[(0, 0)]


def test_rationals_and_comments():
    text = CURR_K.replace("v v = 1 (0|0|v)",
                          "# a comment\nv v = 3/4 (1|0|v) - 1/2 (0|0|v)  # trailing")
    P = parse_file(text).algebra
    assert P.table[(0, 0)].terms == {(((1,),), (0,), 0): Fraction(3, 4),
                                     (((0,),), (0,), 0): Fraction(-1, 2)}
    assert "v v = -1/2 (0|0|v) + 3/4 (1|0|v)" in normalize_text(text)


def test_walg_round_trip(H1):
    W = w_build(H1)
    text = emit_file(H1, W)
    d = parse_file(text)
    assert d.algebra.table == W.table
    assert emit_file(d.hopf, d.algebra) == text


def test_normalize_idempotent():
    for name in ("curr_jf.alg", "hopf_aff1.alg", "hopf_z2.alg", "sl2.alg", "curr_m2.alg"):
        once = normalize_text(_data(name))
        assert normalize_text(once) == once


def test_shipped_files_are_normal():
    for name in ("curr_k.alg", "hopf_aff1.alg", "sl2.alg"):
        assert normalize_text(_data(name)) == _data(name)


def test_smash_block():
    d = parse_file(_data("hopf_z2.alg"))
    assert d.smash.group_names == ["1", "g"]
    assert d.smash.action[1] == [[-1]]


def test_ordinary_round_trip():
    for A in (sl2(), field_k()):
        H0, P = from_ordinary(A)
        B = to_ordinary(parse_file(emit_file(H0, P)).algebra)
        assert B.structure() == A.structure()
        assert B.names == A.names


def test_to_ordinary_rejects_positive_dim():
    with pytest.raises(ParseError):
        to_ordinary(parse_file(CURR_K).algebra)
