"""Definition files: one text format for Hopf data, modules and pseudoproducts.

Grammar (``#`` starts a comment, blank lines are ignored)::

    file     := section*
    section  := "[meta]" meta* | "[hopf]" hopf* | "[module]" module* | "[product]" row*
    meta     := "degree_cutoff = " INT | "conventions = " INT
    hopf     := "dim = " INT
              | "[e" INT ",e" INT "] = " lincomb          (i < j, 1-based)
              | "group = " NAME+                         (first is the identity)
              | NAME " * " NAME " = " NAME
              | "act " NAME " = " row (";" row)*         (row r of the matrix)
    module   := "rank = " INT | "names = " NAME+ | "sectors = " SECTOR+
    row      := NAME " " NAME " = " ("0" | term (("+" | "-") term)*)
    term     := ["-"] RAT " (" MI "|" MI "|" NAME ")"
    lincomb  := "0" | ["-"] RAT " e" INT (("+" | "-") RAT " e" INT)*
    MI       := INT ("," INT)*  or empty when dim = 0
    RAT      := INT | INT "/" INT

A row ``a b = c (alpha|beta|k)`` stands for
c (e^(alpha) (x) 1) (x)_H (e^(beta) v_k). Every ordered pair of basis
names must have a row. Ordinary algebras are files with ``dim = 0``.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .constructions import OrdinaryAlgebra
from .errors import (CutoffExceeded, DimensionMismatch, InvalidAction, JacobiViolation,
                     ParseError, TableNotTotal)
from .hopf import HopfAlgebra, LieData, deglex_key, lie_validate, smash_build
from .lin import add_term
from .pseudo import CanonicalTensor, PseudoAlgebra

CONVENTIONS = 1
DEFAULT_CUTOFF = 6
SECTIONS = ("meta", "hopf", "module", "product")

_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"\s*([+-])?\s*({_RAT})\s*\(([^|()]*)\|([^|()]*)\|([^|()]*)\)\s*")
_LIE_TERM = re.compile(rf"\s*([+-])?\s*({_RAT})\s*e(\d+)\s*")
_BRACKET = re.compile(r"\[\s*e(\d+)\s*,\s*e(\d+)\s*\]\s*=\s*(.*)")


@dataclass
class DefinitionFile:
    hopf: HopfAlgebra
    algebra: PseudoAlgebra = None
    smash: object = None
    conventions: int = CONVENTIONS


def _int(text, line, what):
    try:
        return int(text)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {text!r}") from None


def _rational(sign, text):
    value = Fraction(text)
    return -value if sign == "-" else value


def _terms(pattern, text, line):
    """Split a signed sum into regex matches; the whole text must be consumed."""
    text = text.strip()
    if text == "0":
        return []
    out, pos = [], 0
    while pos < len(text):
        m = pattern.match(text, pos)
        if m is None or (out and m.group(1) is None):
            raise ParseError(line, f"cannot read term at {text[pos:]!r}")
        out.append(m)
        pos = m.end()
    if not out:
        raise ParseError(line, "empty right-hand side")
    return out


def _multi_index(text, dim, line):
    text = text.strip()
    parts = [p.strip() for p in text.split(",")] if text else []
    if len(parts) != dim:
        raise DimensionMismatch(line, f"multi-index ({text}) has length {len(parts)}, expected {dim}")
    values = tuple(_int(p, line, "multi-index entry") for p in parts)
    if any(v < 0 for v in values):
        raise ParseError(line, f"negative multi-index ({text})")
    return values


def _key_value(text, line):
    if "=" not in text:
        raise ParseError(line, f"expected 'key = value', got {text!r}")
    key, value = text.split("=", 1)
    return key.strip(), value.strip()


def _sections(text):
    current = None
    out = {name: [] for name in SECTIONS}
    seen = set()
    for number, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        m = re.fullmatch(r"\[(\w+)\]", content)
        if m:
            current = m.group(1)
            if current not in out:
                raise ParseError(number, f"unknown section [{current}]")
            if current in seen:
                raise ParseError(number, f"section [{current}] appears twice")
            seen.add(current)
            continue
        if current is None:
            raise ParseError(number, "content before the first section")
        out[current].append((number, content))
    if "hopf" not in seen:
        raise ParseError(len(text.splitlines()) + 1, "missing [hopf] section")
    return out, seen


def _parse_meta(lines):
    cutoff, conventions = DEFAULT_CUTOFF, CONVENTIONS
    for line, content in lines:
        key, value = _key_value(content, line)
        if key == "degree_cutoff":
            cutoff = _int(value, line, "degree_cutoff")
        elif key == "conventions":
            conventions = _int(value, line, "conventions")
            if conventions != CONVENTIONS:
                raise ParseError(line, f"unsupported conventions version {conventions}")
        else:
            raise ParseError(line, f"unknown [meta] key {key!r}")
    return cutoff, conventions


def _parse_hopf(lines):
    dim = None
    pairs = {}
    group, products, actions = None, {}, {}
    for line, content in lines:
        m = _BRACKET.fullmatch(content)
        if m:
            if dim is None:
                raise ParseError(line, "bracket before 'dim'")
            i, j = int(m.group(1)) - 1, int(m.group(2)) - 1
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(line, f"generator index outside 1..{dim}")
            if i >= j:
                raise ParseError(line, "write brackets as [ei,ej] with i < j")
            if (i, j) in pairs:
                raise ParseError(line, f"bracket [e{i + 1},e{j + 1}] given twice")
            vec = {}
            for t in _terms(_LIE_TERM, m.group(3), line):
                k = int(t.group(3)) - 1
                if not 0 <= k < dim:
                    raise DimensionMismatch(line, f"generator e{k + 1} outside 1..{dim}")
                add_term(vec, k, _rational(t.group(1), t.group(2)))
            pairs[(i, j)] = (vec, line)
            continue
        if content.startswith("act "):
            name, value = _key_value(content[4:], line)
            rows = [r.split() for r in value.split(";")]
            try:
                actions[name] = ([[Fraction(x) for x in r] for r in rows], line)
            except ValueError:
                raise ParseError(line, f"bad matrix entry in {value!r}") from None
            continue
        if "*" in content:
            lhs, rhs = _key_value(content, line)
            a, b = (x.strip() for x in lhs.split("*", 1))
            products[(a, b)] = (rhs, line)
            continue
        key, value = _key_value(content, line)
        if key == "dim":
            dim = _int(value, line, "dim")
        elif key == "group":
            group = (value.split(), line)
        else:
            raise ParseError(line, f"unknown [hopf] entry {content!r}")
    if dim is None:
        raise ParseError(lines[0][0] if lines else 1, "[hopf] needs 'dim'")
    lie = LieData.from_pairs(dim, {key: vec for key, (vec, _) in pairs.items()})
    violation = lie_validate(lie)
    if violation is not None:
        line = max((ln for _, ln in pairs.values()), default=1)
        raise JacobiViolation(line, str(violation))
    return dim, lie, (group, products, actions)


def _build_smash(H, group_data, dim):
    group, products, actions = group_data
    if group is None:
        if products or actions:
            line = min(ln for _, ln in list(products.values()) + list(actions.values()))
            raise ParseError(line, "group data without a 'group' line")
        return None
    names, line = group
    index = {g: n for n, g in enumerate(names)}
    n = len(names)
    table = [[None] * n for _ in range(n)]
    for g in range(n):
        table[0][g] = table[g][0] = g
    for (a, b), (rhs, ln) in products.items():
        for x in (a, b, rhs):
            if x not in index:
                raise ParseError(ln, f"unknown group element {x!r}")
        table[index[a]][index[b]] = index[rhs]
    for a in range(n):
        for b in range(n):
            if table[a][b] is None:
                raise TableNotTotal(line, f"group product {names[a]} * {names[b]} missing")
    ident = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    mats = [ident]
    for g in names[1:]:
        if g not in actions:
            raise TableNotTotal(line, f"no action given for {g}")
        mat, ln = actions[g]
        if dim == 0 and mat == [[]]:
            mat = []
        if len(mat) != dim or any(len(r) != dim for r in mat):
            raise DimensionMismatch(ln, f"action of {g} must be {dim} x {dim}")
        mats.append(mat)
    try:
        return smash_build(H, names, table, mats)
    except InvalidAction as exc:
        raise ParseError(line, str(exc)) from None


def _parse_module(lines, dim):
    rank, names, sectors = None, None, None
    last = lines[-1][0] if lines else 1
    for line, content in lines:
        key, value = _key_value(content, line)
        if key == "rank":
            rank = _int(value, line, "rank")
        elif key == "names":
            names = value.split()
            if len(set(names)) != len(names):
                raise ParseError(line, "repeated basis name")
        elif key == "sectors":
            sectors = value.split()
            if any(s not in ("-", "0", "+") for s in sectors):
                raise ParseError(line, "sectors must be '-', '0' or '+'")
        else:
            raise ParseError(line, f"unknown [module] key {key!r}")
    if rank is None:
        raise ParseError(last, "[module] needs 'rank'")
    if names is None:
        names = [f"v{i + 1}" for i in range(rank)]
    if len(names) != rank:
        raise DimensionMismatch(last, f"{len(names)} names for rank {rank}")
    if sectors is not None and len(sectors) != rank:
        raise DimensionMismatch(last, f"{len(sectors)} sectors for rank {rank}")
    return names, sectors


def _parse_products(lines, names, dim, cutoff):
    index = {name: k for k, name in enumerate(names)}
    table = {}
    for line, content in lines:
        lhs, rhs = _key_value(content, line)
        parts = lhs.split()
        if len(parts) != 2 or any(p not in index for p in parts):
            raise ParseError(line, f"row must start with two basis names, got {lhs!r}")
        key = (index[parts[0]], index[parts[1]])
        if key in table:
            raise ParseError(line, f"row {lhs} given twice")
        terms = {}
        for t in _terms(_TERM, rhs, line):
            alpha = _multi_index(t.group(3), dim, line)
            beta = _multi_index(t.group(4), dim, line)
            label = t.group(5).strip()
            if label not in index:
                raise ParseError(line, f"unknown basis name {label!r}")
            degree = sum(alpha) + sum(beta)
            if degree > cutoff:
                raise ParseError(line, str(CutoffExceeded(degree, cutoff)))
            add_term(terms, ((alpha,), beta, index[label]), _rational(t.group(1), t.group(2)))
        table[key] = CanonicalTensor(2, terms)
    last = lines[-1][0] if lines else 1
    for i in range(len(names)):
        for j in range(len(names)):
            if (i, j) not in table:
                raise TableNotTotal(last, f"missing row {names[i]} {names[j]}")
    return table


def parse_file(text, degree_cutoff=None):
    """Parse a definition file; ``degree_cutoff`` overrides the [meta] value."""
    sections, seen = _sections(text)
    cutoff, conventions = _parse_meta(sections["meta"])
    if degree_cutoff is not None:
        cutoff = degree_cutoff
    dim, lie, group_data = _parse_hopf(sections["hopf"])
    H = HopfAlgebra(lie, cutoff)
    smash = _build_smash(H, group_data, dim)
    algebra = None
    if "module" in seen:
        names, sectors = _parse_module(sections["module"], dim)
        table = _parse_products(sections["product"], names, dim, cutoff)
        algebra = PseudoAlgebra(H, names, table, sectors)
    elif sections["product"]:
        raise ParseError(sections["product"][0][0], "[product] without [module]")
    return DefinitionFile(H, algebra, smash, conventions)


def read_file(path, degree_cutoff=None):
    with open(path, encoding="utf-8") as fh:
        return parse_file(fh.read(), degree_cutoff)


# -- emission ---------------------------------------------------------------

def _signed_sum(items):
    """``[(coeff, text)]`` -> ``c1 t1 + c2 t2 - c3 t3``."""
    if not items:
        return "0"
    out = []
    for n, (c, text) in enumerate(items):
        if n == 0:
            out.append(f"{c} {text}")
        else:
            out.append(f"{'-' if c < 0 else '+'} {abs(c)} {text}")
    return " ".join(out)


def _mi(alpha):
    return ",".join(str(a) for a in alpha)


def emit_row(P, i, j):
    entry = P.table[(i, j)]
    keys = sorted(entry.terms, key=lambda t: (deglex_key(t[0][0]), deglex_key(t[1]), t[2]))
    items = [(entry.terms[k], f"({_mi(k[0][0])}|{_mi(k[1])}|{P.names[k[2]]})") for k in keys]
    return f"{P.names[i]} {P.names[j]} = {_signed_sum(items)}"


def emit_hopf_lines(H, smash=None):
    lines = [f"dim = {H.dim}"]
    for i in range(H.dim):
        for j in range(i + 1, H.dim):
            vec = H.lie.br(i, j)
            if vec:
                items = [(vec[k], f"e{k + 1}") for k in sorted(vec)]
                lines.append(f"[e{i + 1},e{j + 1}] = {_signed_sum(items)}")
    if smash is not None:
        names = smash.group_names
        lines.append("group = " + " ".join(names))
        for a in range(1, len(names)):
            for b in range(1, len(names)):
                lines.append(f"{names[a]} * {names[b]} = {names[smash.table[a][b]]}")
        for g in range(1, len(names)):
            rows = "; ".join(" ".join(str(x) for x in row) for row in smash.action[g])
            lines.append(f"act {names[g]} = {rows}")
    return lines


def emit_file(H, P=None, smash=None):
    lines = ["[meta]", f"degree_cutoff = {H.degree_cutoff}", f"conventions = {CONVENTIONS}",
             "", "[hopf]"]
    lines.extend(emit_hopf_lines(H, smash))
    if P is not None:
        lines.extend(["", "[module]", f"rank = {P.rank}", "names = " + " ".join(P.names)])
        if P.sectors is not None:
            lines.append("sectors = " + " ".join(P.sectors))
        lines.extend(["", "[product]"])
        for i in range(P.rank):
            for j in range(P.rank):
                lines.append(emit_row(P, i, j))
    return "\n".join(lines) + "\n"


def emit_definition(d):
    return emit_file(d.hopf, d.algebra, d.smash)


def normalize_text(text):
    """Parse and re-emit: the canonical spelling of a definition file."""
    return emit_definition(parse_file(text))


# -- ordinary algebras ------------------------------------------------------

def to_ordinary(P):
    """The ordinary algebra of a file with dim = 0."""
    if P.hopf.dim != 0:
        raise ParseError(1, "expected an ordinary algebra (dim = 0)")
    table = {}
    for key, entry in P.table.items():
        vec = {k: c for (_, _, k), c in entry.terms.items()}
        if vec:
            table[key] = vec
    return OrdinaryAlgebra(P.names, table, P.sectors)


def from_ordinary(A, degree_cutoff=DEFAULT_CUTOFF):
    H = HopfAlgebra(LieData(0, {}), degree_cutoff)
    table = {key: CanonicalTensor(2, {(((),), (), k): c for k, c in vec.items()})
             for key, vec in A.table.items()}
    return H, PseudoAlgebra(H, A.names, table, A.sectors)
