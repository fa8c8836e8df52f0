"""Isomorphism search between pseudoalgebras with trivial H-parts and currents.

A pseudoalgebra whose table only has degree-0 entries is Curr of the
ordinary algebra with the same structure constants, so the question
reduces to finding an invertible scalar matrix M with
M [x, y] = [M x, M y]. Three strategies are tried in order:

1. invariants (derived algebra, centre, trace form rank) rule out
   obvious mismatches;
2. graded seeding when both sides carry matching '-', '0', '+' sectors;
3. scaled permutation seeds (all of them for rank <= 4);
4. a lex Groebner basis of the equations for M, for rank <= 3.

Only for rank <= 3 does a failure mean "not isomorphic"; beyond that it
means "not found".
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import RankMismatch
from .lin import mat_inverse, mat_rank, nullspace, rref

SCALES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(1, 2), Fraction(-1, 2))


@dataclass
class IsoResult:
    matrix: list = None  # column i = image of basis vector i
    reason: str = ""

    @property
    def found(self):
        return self.matrix is not None

    def lines(self):
        if not self.found:
            return [f"ISO: FAIL {self.reason}".rstrip()]
        out = ["ISO: FOUND"]
        for row in self.matrix:
            out.append("MATRIX: " + " ".join(str(x) for x in row))
        return out


def structure_of(P):
    """Dense structure constants of a pseudoalgebra with trivial H-parts, else None."""
    n = P.rank
    zero = P.hopf.zero
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), entry in P.table.items():
        for ((h,), beta, k), v in entry.terms.items():
            if h != zero or beta != zero:
                return None
            c[i][j][k] = v
    return c


def _bracket(c, x, y):
    n = len(c)
    out = [Fraction(0)] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            w = x[i] * y[j]
            for k in range(n):
                if c[i][j][k]:
                    out[k] += w * c[i][j][k]
    return out


def _column(M, i):
    return [row[i] for row in M]


def is_homomorphism(M, ca, cb):
    """Exact check that the matrix M carries the product ca to cb."""
    n = len(ca)
    cols = [_column(M, i) for i in range(n)]
    for i, j in itertools.product(range(n), repeat=2):
        lhs = [sum((M[r][k] * ca[i][j][k] for k in range(n)), Fraction(0)) for r in range(len(M))]
        if lhs != _bracket(cb, cols[i], cols[j]):
            return False
    return True


def _verify(M, ca, cb):
    return mat_inverse(M) is not None and is_homomorphism(M, ca, cb)


def invariants(c):
    n = len(c)
    derived = [c[i][j] for i in range(n) for j in range(n)]
    ad = [[[c[i][j][k] for j in range(n)] for k in range(n)] for i in range(n)]
    # centre: x with sum_i x_i c[i][j][k] = 0 for all j, k
    rows = [[c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    centre = len(nullspace(rows, n)) if n else 0
    form = [[sum(ad[i][a][b] * ad[j][b][a] for a in range(n) for b in range(n))
             for j in range(n)] for i in range(n)]
    return (mat_rank(derived, n), centre, mat_rank(form, n))


def _graded_seed(ca, cb, sa, sb, lam_minus, lam_plus):
    n = len(ca)
    minus_a = [i for i in range(n) if sa[i] == "-"]
    plus_a = [i for i in range(n) if sa[i] == "+"]
    zero_a = [i for i in range(n) if sa[i] == "0"]
    minus_b = [i for i in range(n) if sb[i] == "-"]
    plus_b = [i for i in range(n) if sb[i] == "+"]
    M = [[Fraction(0)] * n for _ in range(n)]
    for a, b in zip(minus_a, minus_b):
        M[b][a] = lam_minus
    for a, b in zip(plus_a, plus_b):
        M[b][a] = lam_plus
    # images of the '0' sector from [a-, b+] = sum_k c_k u_k
    s = len(zero_a)
    eqs = []
    for a, b in itertools.product(minus_a, plus_a):
        coeff = [ca[a][b][z] for z in zero_a]
        if any(coeff):
            target = _bracket(cb, _column(M, a), _column(M, b))
            eqs.append((coeff, target))
    if not eqs:
        return None
    mat = [e[0] for e in eqs]
    if mat_rank(mat, s) < s:
        return None
    for r in range(n):
        rows = [coeff + [target[r]] for coeff, target in eqs]
        reduced, pivots = rref(rows, s + 1)
        if s in pivots:
            return None
        for row, p in zip(reduced, pivots):
            M[r][zero_a[p]] = row[s]
    return M


def _monomial_seeds(n, rng, limit):
    perms = itertools.permutations(range(n))
    if n <= 4:
        for perm in perms:
            for scales in itertools.product(SCALES, repeat=n):
                yield perm, scales
    else:
        for _ in range(limit):
            perm = list(range(n))
            rng.shuffle(perm)
            yield perm, [rng.choice(SCALES) for _ in range(n)]


FREE_VALUES = (1, -1, 2, 0, Fraction(1, 2), 3)
ELIMINATION_MAX_RANK = 3  # lex Groebner on 16 unknowns takes minutes


def _rational_roots(poly):
    out = []
    for factor, _ in sympy.factor_list(poly.as_expr(), *poly.gens)[1]:
        f = sympy.Poly(factor, *poly.gens)
        if f.degree() == 1:
            a, b = f.all_coeffs()
            out.append(-b / a)
    return out


def _elimination(ca, cb):
    """Lex Groebner basis of the homomorphism equations, then back-substitution.

    Variables fixed by the basis take its rational roots; free ones take
    small values. Invertibility and the equations are re-checked exactly.
    """
    n = len(ca)
    syms = sympy.symbols(f"m0:{n * n}")
    M = sympy.Matrix(n, n, syms)
    eqs = []
    for i, j in itertools.combinations(range(n), 2):
        lhs = M * sympy.Matrix([sympy.Rational(ca[i][j][k]) for k in range(n)])
        xi, xj = M.col(i), M.col(j)
        rhs = [sum(sympy.Rational(cb[p][q][k]) * xi[p] * xj[q]
                   for p in range(n) for q in range(n) if cb[p][q][k]) for k in range(n)]
        eqs.extend(sympy.expand(lhs[k] - rhs[k]) for k in range(n))
    eqs = [e for e in eqs if e != 0]
    basis = list(sympy.groebner(eqs, *syms, order="lex").exprs) if eqs else []
    if basis == [1]:
        return None
    order = list(reversed(syms))

    def search(idx, assign):
        if idx == len(order):
            mat = [[Fraction(int(assign[syms[r * n + c]].p), int(assign[syms[r * n + c]].q))
                    for c in range(n)] for r in range(n)]
            return mat if _verify(mat, ca, cb) else None
        var = order[idx]
        known = set(order[:idx + 1])
        polys = []
        for g in basis:
            if var in g.free_symbols and g.free_symbols <= known:
                reduced = sympy.expand(g.subs(assign))
                if reduced == 0:
                    continue
                if var not in reduced.free_symbols:
                    return None
                polys.append(sympy.Poly(reduced, var))
        if polys:
            common = polys[0]
            for p in polys[1:]:
                common = sympy.gcd(common, p)
            if common.degree() < 1:
                return None
            candidates = _rational_roots(common)
        else:
            candidates = [sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction)
                          else sympy.Integer(v) for v in FREE_VALUES]
        for value in candidates:
            found = search(idx + 1, {**assign, var: value})
            if found is not None:
                return found
        return None

    return search(0, {})


def find_isomorphism(ca, cb, sectors_a=None, sectors_b=None, seed=0, trials=2000):
    n = len(ca)
    if len(cb) != n:
        raise RankMismatch(f"ranks {n} and {len(cb)} differ")
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if _verify(ident, ca, cb):
        return IsoResult(ident)
    if invariants(ca) != invariants(cb):
        return IsoResult(None, "invariants differ")
    if sectors_a and sectors_b and sorted(sectors_a) == sorted(sectors_b):
        for lm, lp in itertools.product(SCALES, repeat=2):
            M = _graded_seed(ca, cb, sectors_a, sectors_b, lm, lp)
            if M is not None and _verify(M, ca, cb):
                return IsoResult(M)
    rng = random.Random(seed)
    for perm, scales in _monomial_seeds(n, rng, trials):
        M = [[Fraction(0)] * n for _ in range(n)]
        for i, (p, s) in enumerate(zip(perm, scales)):
            M[p][i] = s
        if is_homomorphism(M, ca, cb):
            return IsoResult(M)
    if n <= ELIMINATION_MAX_RANK:
        M = _elimination(ca, cb)
        if M is not None:
            return IsoResult(M)
        return IsoResult(None, "no isomorphism")
    return IsoResult(None, "not found by seeded search")


def current_iso_check(P, g, seed=0):
    """Search for Curr g ~ P by a scalar change of basis of V."""
    if P.rank != g.dim:
        raise RankMismatch(f"rank {P.rank} against dimension {g.dim}")
    ca = structure_of(P)
    if ca is None:
        return IsoResult(None, "table has non-trivial H-parts")
    return find_isomorphism(ca, g.structure(), P.sectors, g.sectors, seed=seed)
