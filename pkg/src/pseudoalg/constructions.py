"""Builders for pseudoalgebras and for their finite windows.

Currents, base extension along a Lie subalgebra, the (+)/(-) functors,
W(h) computed inside the ambient H (x) H, and finite windows of the
annihilation and coefficient algebras.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .dual import h_action, x_mul
from .errors import NotASubalgebra, PseudoalgError, WrongHopfAlgebra
from .hopf import format_mi, splits, unit
from .lin import add_scaled, add_term, as_fraction, mat_rank
from .pseudo import CanonicalTensor, PseudoAlgebra, coefficients, normalize, sigma_act


@dataclass
class OrdinaryAlgebra:
    """A finite-dimensional algebra: ``table[(i, j)] = {k: m^k_ij}``."""

    names: list
    table: dict = field(default_factory=dict)
    sectors: list = None

    @property
    def dim(self):
        return len(self.names)

    def mul(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                add_scaled(out, self.table.get((i, j), {}), a * b)
        return out

    def structure(self):
        """Dense structure constants, ``[i][j][k]``."""
        n = self.dim
        return [[[self.table.get((i, j), {}).get(k, Fraction(0)) for k in range(n)]
                 for j in range(n)] for i in range(n)]


def ordinary(names, entries, sectors=None):
    """Build from ``{(i, j): {k: c}}`` with coefficients coerced to Fraction."""
    table = {}
    for key, vec in entries.items():
        vec = {k: as_fraction(c) for k, c in vec.items() if c}
        if vec:
            table[key] = vec
    return OrdinaryAlgebra(list(names), table, sectors)


def field_k():
    return ordinary(["v"], {(0, 0): {0: 1}})


def k_squared():
    return ordinary(["u1", "u2"], {(0, 0): {0: 1}, (1, 1): {1: 1}})


def sl2():
    """Basis e, h, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return ordinary(["e", "h", "f"], {
        (0, 1): {0: -2}, (1, 0): {0: 2},
        (1, 2): {2: -2}, (2, 1): {2: 2},
        (0, 2): {1: 1}, (2, 0): {1: -1},
    })


def abelian_algebra(dim):
    return OrdinaryAlgebra([f"x{i + 1}" for i in range(dim)], {})


def matrix_algebra(n=2):
    names = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    table = {}
    for i, j, l in itertools.product(range(n), repeat=3):
        table[(i * n + j, j * n + l)] = {i * n + l: Fraction(1)}
    return OrdinaryAlgebra(names, table)


def jordan_form(gram):
    """J(f) = ku + V with (a + x)(b + y) = (ab + f(x, y)) + (ay + bx).

    ``gram`` is the matrix of the symmetric form f on V.
    """
    m = len(gram)
    names = ["u"] + [f"w{i + 1}" for i in range(m)]
    entries = {(0, 0): {0: 1}}
    for i in range(m):
        entries[(0, i + 1)] = {i + 1: 1}
        entries[(i + 1, 0)] = {i + 1: 1}
        for j in range(m):
            entries[(i + 1, j + 1)] = {0: gram[i][j]}
    return ordinary(names, entries)


# -- currents ---------------------------------------------------------------

def curr_build(H, A):
    zero = H.zero
    table = {}
    for (i, j), vec in A.table.items():
        table[(i, j)] = CanonicalTensor(2, {((zero,), zero, k): c for k, c in vec.items()})
    return PseudoAlgebra(H, A.names, table)


def _lie_map(H_sub, H, matrix):
    """Image of each divided-power monomial of U(h') under the inclusion."""
    images = [{unit(H.dim, k): as_fraction(matrix[k][i]) for k in range(H.dim) if matrix[k][i]}
              for i in range(H_sub.dim)]
    cache = {}

    def mono(alpha):
        hit = cache.get(alpha)
        if hit is None:
            hit = H.one()
            for i, a in enumerate(alpha):
                if a:
                    p = H.power(images[i], a)
                    hit = H.mul(hit, {k: v / factorial(a) for k, v in p.items()})
            cache[alpha] = hit
        return hit

    return mono


def curr_extend(H, H_sub, matrix, P_sub):
    """Extend P' over U(h') to U(h) along h' -> h, e'_i -> sum_k matrix[k][i] e_k."""
    if len(matrix) != H.dim or any(len(row) != H_sub.dim for row in matrix):
        raise NotASubalgebra("inclusion matrix has the wrong shape")
    mono = _lie_map(H_sub, H, matrix)
    vecs = [{k: c for k, c in ((k, matrix[k][i]) for k in range(H.dim)) if c}
            for i in range(H_sub.dim)]
    for i, j in itertools.product(range(H_sub.dim), repeat=2):
        lhs = {}
        for k, c in H_sub.lie.br(i, j).items():
            add_scaled(lhs, {kk: as_fraction(v) for kk, v in vecs[k].items()}, c)
        rhs = H.lie.br_vec({k: as_fraction(v) for k, v in vecs[i].items()},
                           {k: as_fraction(v) for k, v in vecs[j].items()})
        if lhs != rhs:
            raise NotASubalgebra(f"inclusion does not preserve [e{i + 1},e{j + 1}]")
    if H_sub.dim:
        if mat_rank([list(map(as_fraction, r)) for r in matrix], H_sub.dim) < H_sub.dim:
            raise NotASubalgebra("inclusion is not injective")
    table = {}
    for key, entry in P_sub.table.items():
        out = {}
        for ((h,), beta, k), c in entry.terms.items():
            for lead, v in mono(h).items():
                for mu, w in mono(beta).items():
                    add_term(out, ((lead,), mu, k), c * v * w)
        table[key] = CanonicalTensor(2, out)
    return PseudoAlgebra(H, P_sub.names, table, P_sub.sectors)


def plus_minus(P, sign):
    """a o b = a*b + sigma12(b*a) (plus) or a*b - sigma12(b*a) (minus)."""
    s = {"plus": 1, "minus": -1}[sign]
    table = {}
    for i, j in itertools.product(range(P.rank), repeat=2):
        swapped = sigma_act(P.hopf, (1, 0), P.table[(j, i)])
        table[(i, j)] = P.table[(i, j)] + swapped.scale(s)
    return P.with_table(table)


# -- W(h) -------------------------------------------------------------------

def ambient_mul(H, a, b):
    """Pseudoproduct of the associative H (x) H on module elements.

    Labels are multi-indices for the second tensor factor:
    (h (x) x) * (g (x) y) = (h y_(1) (x) g) (x)_H (1 (x) x y_(2)).
    """
    raw = {}
    for (beta, x), c in a.items():
        for (gamma, y), d in b.items():
            for y1, y2 in splits(y, 2):
                lead = H.pbw_mul(beta, y1)
                tail = H.pbw_mul(x, y2)
                for f, v in lead.items():
                    for lab, w in tail.items():
                        add_term(raw, ((f, gamma), H.zero, lab), c * d * v * w)
    return normalize(H, 2, raw)


def w_build(H):
    """W(h) = H (x) h with the commutator pseudobracket of H (x) H."""
    if H.dim < 1:
        raise WrongHopfAlgebra("W(h) needs dim h >= 1")
    zero = H.zero
    gens = [{(zero, unit(H.dim, i)): Fraction(1)} for i in range(H.dim)]
    label_of = {unit(H.dim, i): i for i in range(H.dim)}
    table = {}
    for i, j in itertools.product(range(H.dim), repeat=2):
        ij = ambient_mul(H, gens[i], gens[j])
        ji = sigma_act(H, (1, 0), ambient_mul(H, gens[j], gens[i]))
        br = ij - ji
        out = {}
        for (slots, beta, lab), c in br.terms.items():
            if lab not in label_of:
                raise PseudoalgError(
                    f"bracket of e{i + 1}, e{j + 1} leaves H (x) h at 1 (x) e^({format_mi(lab)})")
            out[(slots, beta, label_of[lab])] = c
        table[(i, j)] = CanonicalTensor(2, out)
    return PseudoAlgebra(H, [f"d{i + 1}" for i in range(H.dim)], table)


# -- finite windows ---------------------------------------------------------

@dataclass
class WindowAlgebra:
    """Products of window generators; ``overflow`` lists pairs leaving the window."""

    generators: list
    products: dict
    overflow: set
    label: object = None  # generator -> display string

    def product(self, a, b):
        return self.products.get((a, b), {})

    def format_element(self, vec):
        if not vec:
            return "0"
        order = {g: n for n, g in enumerate(self.generators)}
        parts = [f"{vec[g]} {self.label(g)}" for g in sorted(vec, key=lambda g: order.get(g, -1))]
        return " + ".join(parts)

    def lines(self):
        out = []
        for a in self.generators:
            for b in self.generators:
                flag = " OVERFLOW" if (a, b) in self.overflow else ""
                out.append(f"{self.label(a)} * {self.label(b)} = "
                           f"{self.format_element(self.product(a, b))}{flag}")
        return out


def annihilation_build(P, probe_degree):
    """Window of the annihilation algebra on t^mu (x)_H v_k, |mu| <= probe.

    (x (x)_H a)(y (x)_H b) = x_(1) y (x)_H (a (.)_{x_(2)} b), where
    x_(1) (x) x_(2) = sum_nu x S(e^(nu)) (x) t^nu is the coproduct of X.
    This is the product for which x h (x)_H a = x (x)_H h a holds with the
    x-products defined through <x, S(h_i)>.
    """
    H = P.hopf
    H.check_degree(probe_degree)
    gens = [(mu, k) for mu in H.monomials(probe_degree) for k in range(P.rank)]
    coeffs = {key: coefficients(H, entry) for key, entry in P.table.items()}
    products, overflow = {}, set()
    for (mu, a), (lam, b) in itertools.product(gens, repeat=2):
        x, y = {mu: Fraction(1)}, {lam: Fraction(1)}
        out = {}
        for nu, c in coeffs[(a, b)].items():
            first = h_action(H, "right", H.antipode_mono(nu), x)
            z = x_mul(first, y)
            for (beta, k), v in c.items():
                w = h_action(H, "right", {beta: Fraction(1)}, z) if sum(beta) else z
                for rho, u in w.items():
                    add_term(out, (rho, k), u * v)
        inside = {g: v for g, v in out.items() if sum(g[0]) <= probe_degree}
        if len(inside) != len(out):
            overflow.add(((mu, a), (lam, b)))
        if inside:
            products[((mu, a), (lam, b))] = inside

    def label(g):
        return f"t^({format_mi(g[0])})*{P.names[g[1]]}"

    return WindowAlgebra(gens, products, overflow, label)


def gen_binomial(n, s):
    """n choose s for any integer n and s >= 0."""
    out = Fraction(1)
    for i in range(s):
        out *= n - i
    return out / factorial(s)


def coeff_build(P, window):
    """Window |n| <= N of the coefficient algebra of a conformal algebra.

    a(n) b(m) = sum_s C(n, s) (a (.)_s b)(n + m - s), with
    (e^(j) a)(p) = (-1)^j C(p, j) a(p - j).
    """
    H = P.hopf
    if H.dim != 1 or H.lie.bracket:
        raise WrongHopfAlgebra("coefficient algebras need a one-dimensional h")
    if window < 1:
        raise ValueError("window must be at least 1")
    gens = [(k, n) for k in range(P.rank) for n in range(-window, window + 1)]
    coeffs = {key: coefficients(H, entry) for key, entry in P.table.items()}
    products, overflow = {}, set()
    for (a, n), (b, m) in itertools.product(gens, repeat=2):
        out = {}
        for (s,), c in coeffs[(a, b)].items():
            binom = gen_binomial(n, s)
            if not binom:
                continue
            p = n + m - s
            for ((j,), k), v in c.items():
                add_term(out, (k, p - j), binom * v * (-1) ** j * gen_binomial(p, j))
        inside = {g: v for g, v in out.items() if abs(g[1]) <= window}
        if len(inside) != len(out):
            overflow.add(((a, n), (b, m)))
        if inside:
            products[((a, n), (b, m))] = inside

    def label(g):
        return f"{P.names[g[0]]}({g[1]})"

    return WindowAlgebra(gens, products, overflow, label)

