"""The TKK construction for ordinary finite-dimensional Jordan algebras.

Written directly with sympy matrices and kept apart from the pseudoalgebra
code, so that it can serve as an independent reference.
"""

import itertools
from fractions import Fraction

import sympy

from .constructions import ordinary
from .errors import ClosureError


def _left_mults(A):
    n = A.dim
    mats = []
    for i in range(n):
        m = sympy.zeros(n, n)
        for j in range(n):
            for k, c in A.table.get((i, j), {}).items():
                m[k, j] = sympy.Rational(c.numerator, c.denominator)
        mats.append(m)
    return mats


class _Structure:
    """S(j) elements as pairs (a, D): a column vector and an n x n matrix."""

    def __init__(self, A):
        self.n = A.dim
        self.L = _left_mults(A)

    def L_of(self, a):
        out = sympy.zeros(self.n, self.n)
        for i in range(self.n):
            if a[i]:
                out += a[i] * self.L[i]
        return out

    def flat(self, pair):
        a, D = pair
        return list(a) + list(D)

    def unflat(self, vec):
        n = self.n
        return sympy.Matrix(vec[:n]), sympy.Matrix(n, n, vec[n:])

    def act(self, pair, c):
        a, D = pair
        return self.L_of(a) * c + D * c

    def bracket(self, p, q):
        a, D = p
        b, T = q
        La, Lb = self.L_of(a), self.L_of(b)
        return D * b - T * a, La * Lb - Lb * La + D * T - T * D

    def u(self, a, b):
        La, Lb = self.L_of(a), self.L_of(b)
        return La * b, La * Lb - Lb * La


def ordinary_tkk(A):
    """T(j) as an :class:`OrdinaryAlgebra` with sectors '-', '0', '+'."""
    n = A.dim
    S = _Structure(A)
    e = [sympy.Matrix([int(i == k) for i in range(n)]) for k in range(n)]
    span = sympy.Matrix([S.flat(S.u(e[i], e[j])) for i in range(n) for j in range(n)])
    rref, pivots = span.rref()
    basis = [list(rref.row(r)) for r in range(len(pivots))]
    s = len(basis)
    coord_matrix = sympy.Matrix(basis).T  # columns are the S0 basis

    def coords(pair):
        vec = sympy.Matrix(S.flat(pair))
        sol, params = coord_matrix.gauss_jordan_solve(vec)
        if params.shape[0]:
            sol = sol.subs({p: 0 for p in params})
        if coord_matrix * sol != vec:
            raise ClosureError("S0 of the ordinary algebra is not closed")
        return list(sol)

    dim = 2 * n + s
    minus = list(range(n))
    zero = list(range(n, n + s))
    plus = list(range(n + s, 2 * n + s))
    table = {}

    def put(i, j, vec):
        entry = {k: c for k, c in enumerate(vec) if c != 0}
        if entry:
            table[(i, j)] = entry

    def embed(sector, vec):
        out = [sympy.Integer(0)] * dim
        for k, c in enumerate(vec):
            out[sector[k]] += c
        return out

    s0 = [S.unflat(b) for b in basis]
    for i, j in itertools.product(range(n), repeat=2):
        a, D = S.u(e[i], e[j])
        put(minus[i], plus[j], embed(zero, coords((a, D))))
        put(plus[i], minus[j], embed(zero, coords((-a, D))))
    for k, (a, D) in enumerate(s0):
        star = (-a, D)
        for i in range(n):
            m = S.act((a, D), e[i])
            p = S.act(star, e[i])
            put(zero[k], minus[i], embed(minus, m))
            put(minus[i], zero[k], embed(minus, -m))
            put(zero[k], plus[i], embed(plus, p))
            put(plus[i], zero[k], embed(plus, -p))
        for l, other in enumerate(s0):
            put(zero[k], zero[l], embed(zero, coords(S.bracket((a, D), other))))
    names = ([f"{x}-" for x in A.names] + [f"U{k + 1}" for k in range(s)]
             + [f"{x}+" for x in A.names])
    entries = {key: {k: _fraction(c) for k, c in vec.items()} for key, vec in table.items()}
    return ordinary(names, entries, ["-"] * n + ["0"] * s + ["+"] * n)


def _fraction(c):
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def is_lie(A):
    """Exact anticommutativity and Jacobi for an ordinary algebra."""
    n = A.dim
    for i, j in itertools.product(range(n), repeat=2):
        x, y = A.table.get((i, j), {}), A.table.get((j, i), {})
        if any(x.get(k, 0) + y.get(k, 0) for k in range(n)):
            return False
    for i, j, k in itertools.product(range(n), repeat=3):
        a, b, c = {i: 1}, {j: 1}, {k: 1}
        total = {}
        for u, v, w in ((a, b, c), (b, c, a), (c, a, b)):
            for key, val in A.mul(u, A.mul(v, w)).items():
                total[key] = total.get(key, 0) + val
        if any(total.values()):
            return False
    return True
