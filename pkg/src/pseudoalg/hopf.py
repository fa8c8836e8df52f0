"""The universal enveloping algebra U(h) in the divided-power PBW basis.

Elements of H are sparse dicts ``{alpha: Fraction}`` where ``alpha`` is a
multi-index (tuple of non-negative ints) standing for the divided-power
monomial ``e^(alpha) = e_1^a1 ... e_n^an / (a1! ... an!)``. Generators are
ordered e_1 < ... < e_n as given, and products are straightened into that
order with the Lie bracket.

Everything is exact. A single ``degree_cutoff`` bounds every H-degree a
computation may touch; going over it raises :class:`CutoffExceeded`.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import CutoffExceeded, InvalidAction
from .lin import add_scaled, add_term, as_fraction, mat_inverse, mat_mul


# -- multi-indices ----------------------------------------------------------

def deglex_key(alpha):
    return (sum(alpha), alpha)


def mi_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mi_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mi_factorial(a):
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def unit(dim, i, k=1):
    return tuple(k if j == i else 0 for j in range(dim))


def zero_mi(dim):
    return (0,) * dim


@lru_cache(maxsize=None)
def monomials(dim, max_degree):
    """All multi-indices of length ``dim`` and degree <= max_degree, deg-lex."""
    out = [a for a in itertools.product(range(max_degree + 1), repeat=dim)
           if sum(a) <= max_degree]
    return tuple(sorted(out, key=deglex_key))


@lru_cache(maxsize=None)
def splits(alpha, n):
    """All n-tuples (nu_1, ..., nu_n) of multi-indices summing to alpha."""
    if n == 1:
        return ((alpha,),)
    out = []
    for first in itertools.product(*(range(a + 1) for a in alpha)):
        rest = mi_sub(alpha, first)
        for tail in splits(rest, n - 1):
            out.append((first,) + tail)
    return tuple(out)


def degree(elem):
    """Top degree of a sparse element keyed by multi-indices; -1 for zero."""
    return max((sum(a) for a in elem), default=-1)


def format_mi(alpha):
    return ",".join(str(x) for x in alpha)


def format_h(elem, symbol="e"):
    """Deg-lex term list ``coeff e^(a1,...,an)``; ``0`` for the zero element."""
    if not elem:
        return "0"
    parts = []
    for alpha in sorted(elem, key=deglex_key):
        parts.append(f"{elem[alpha]} {symbol}^({format_mi(alpha)})")
    return " + ".join(parts)


# -- Lie algebra data -------------------------------------------------------

@dataclass(frozen=True)
class LieData:
    """Structure constants: ``bracket[(i, j)] = {k: c^k_ij}`` (0-based).

    Missing pairs mean a zero bracket.
    """

    dim: int
    bracket: dict = field(default_factory=dict)

    def br(self, i, j):
        return self.bracket.get((i, j), {})

    def br_vec(self, x, y):
        """Bracket of two elements of h given as {i: coeff}."""
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                add_scaled(out, self.br(i, j), a * b)
        return out

    @classmethod
    def from_pairs(cls, dim, pairs):
        """Build from ``{(i, j): {k: c}}`` for i < j, filling antisymmetry."""
        bracket = {}
        for (i, j), vec in pairs.items():
            vec = {k: as_fraction(c) for k, c in vec.items() if c}
            if vec:
                bracket[(i, j)] = vec
                bracket[(j, i)] = {k: -c for k, c in vec.items()}
        return cls(dim, bracket)


@dataclass(frozen=True)
class LieViolation:
    kind: str  # "antisymmetry" or "jacobi"
    indices: tuple  # 0-based (i, j, k)

    def __str__(self):
        i, j, k = (x + 1 for x in self.indices)
        return f"{self.kind} violated at ({i},{j},{k})"


def lie_validate(lie):
    """None when ``lie`` is a Lie algebra, else the first violation in lex order."""
    n = lie.dim
    for i, j in itertools.product(range(n), repeat=2):
        a, b = lie.br(i, j), lie.br(j, i)
        for k in range(n):
            if a.get(k, 0) + b.get(k, 0) != 0:
                return LieViolation("antisymmetry", (i, j, k))
    for i, j, k in itertools.product(range(n), repeat=3):
        ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
        total = {}
        add_scaled(total, lie.br_vec(ei, lie.br_vec(ej, ek)))
        add_scaled(total, lie.br_vec(ej, lie.br_vec(ek, ei)))
        add_scaled(total, lie.br_vec(ek, lie.br_vec(ei, ej)))
        if total:
            return LieViolation("jacobi", (i, j, k))
    return None


def abelian(dim):
    return LieData(dim, {})


def aff1():
    """The 2-dimensional non-abelian Lie algebra, [e1, e2] = e2."""
    return LieData.from_pairs(2, {(0, 1): {1: 1}})


# -- the Hopf algebra U(h) --------------------------------------------------

class HopfAlgebra:
    """U(h) with exact PBW arithmetic and a global degree cutoff.

    ``gamma_cache`` memoises divided-power product coefficients
    ``gamma_cache[(alpha, beta)] = {mu: gamma^{alpha,beta}_mu}``; every product
    goes through it, so corrupting an entry is visible to all axioms.
    """

    def __init__(self, lie, degree_cutoff=6):
        self.lie = lie
        self.dim = lie.dim
        self.degree_cutoff = degree_cutoff
        self.gamma_cache = {}
        self._gen_cache = {}
        self._antipode_cache = {}
        self._mul_s_cache = {}
        self.zero = zero_mi(self.dim)

    def __repr__(self):
        return f"HopfAlgebra(dim={self.dim}, degree_cutoff={self.degree_cutoff})"

    def check_degree(self, d):
        if d > self.degree_cutoff:
            raise CutoffExceeded(d, self.degree_cutoff)

    def one(self):
        return {self.zero: Fraction(1)}

    def gen(self, i):
        return {unit(self.dim, i): Fraction(1)}

    def monomials(self, max_degree=None):
        if max_degree is None:
            max_degree = self.degree_cutoff
        return monomials(self.dim, max_degree)

    # ordered (non-divided) monomials times a single generator
    def _times_gen(self, alpha, j):
        key = (alpha, j)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        last = max((i for i, a in enumerate(alpha) if a), default=-1)
        if j >= last:
            out = {mi_add(alpha, unit(self.dim, j)): Fraction(1)}
        else:
            # alpha = rest * e_last and e_last e_j = e_j e_last + [e_last, e_j]
            rest = mi_sub(alpha, unit(self.dim, last))
            out = {}
            for m, c in self._times_gen(rest, j).items():
                add_scaled(out, self._times_gen(m, last), c)
            for k, ck in self.lie.br(last, j).items():
                add_scaled(out, self._times_gen(rest, k), ck)
        self._gen_cache[key] = out
        return out

    def pbw_mul(self, alpha, beta):
        """e^(alpha) e^(beta) in the divided-power basis (a fresh dict)."""
        key = (alpha, beta)
        hit = self.gamma_cache.get(key)
        if hit is None:
            self.check_degree(sum(alpha) + sum(beta))
            ordered = {alpha: Fraction(1)}
            for i, b in enumerate(beta):
                for _ in range(b):
                    nxt = {}
                    for m, c in ordered.items():
                        add_scaled(nxt, self._times_gen(m, i), c)
                    ordered = nxt
            denom = mi_factorial(alpha) * mi_factorial(beta)
            hit = {mu: c * mi_factorial(mu) / denom for mu, c in ordered.items()}
            self.gamma_cache[key] = hit
        return dict(hit)

    def mul(self, a, b):
        out = {}
        for alpha, ca in a.items():
            for beta, cb in b.items():
                add_scaled(out, self.pbw_mul(alpha, beta), ca * cb)
        return out

    def power(self, a, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def counit(self, h):
        return h.get(self.zero, Fraction(0))

    def coproduct(self, h, n=2):
        """Iterated coproduct as ``{(nu_1, ..., nu_n): coeff}``."""
        self.check_degree(degree(h))
        out = {}
        for alpha, c in h.items():
            for parts in splits(alpha, n):
                add_term(out, parts, c)
        return out

    def antipode_mono(self, alpha):
        hit = self._antipode_cache.get(alpha)
        if hit is None:
            self.check_degree(sum(alpha))
            # S is an anti-homomorphism with S(e_i) = -e_i
            hit = self.one()
            for i in reversed(range(self.dim)):
                if alpha[i]:
                    hit = self.mul(hit, {unit(self.dim, i, alpha[i]): Fraction(1)})
            if sum(alpha) % 2:
                hit = {k: -v for k, v in hit.items()}
            self._antipode_cache[alpha] = hit
        return dict(hit)

    def antipode(self, h):
        out = {}
        for alpha, c in h.items():
            add_scaled(out, self.antipode_mono(alpha), c)
        return out

    def mul_s(self, alpha, nu):
        """e^(alpha) S(e^(nu)), memoised (the workhorse of normal forms)."""
        key = (alpha, nu)
        hit = self._mul_s_cache.get(key)
        if hit is None:
            hit = self.mul({alpha: Fraction(1)}, self.antipode_mono(nu))
            self._mul_s_cache[key] = hit
        return hit

    # generic interface shared with SmashAlgebra
    def basis(self, max_degree):
        return list(self.monomials(max_degree))

    def key_degree(self, key):
        return sum(key)

    def format_key(self, key):
        return f"e^({format_mi(key)})"


# -- smash product with a finite group --------------------------------------

class SmashAlgebra:
    """U(h) # Q[G] for a finite group G acting on h by Lie automorphisms.

    Basis keys are ``(alpha, g)`` with g an index into ``group_names``;
    index 0 is the identity. ``action[g]`` is a dim x dim matrix whose
    column j holds the coordinates of g(e_j).
    """

    def __init__(self, base, group_names, table, action):
        self.base = base
        self.dim = base.dim
        self.degree_cutoff = base.degree_cutoff
        self.group_names = list(group_names)
        self.table = table
        self.action = [[list(map(as_fraction, row)) for row in m] for m in action]
        self.order = len(group_names)
        self.inverse = [next(h for h in range(self.order) if table[g][h] == 0)
                        for g in range(self.order)]
        self._act_cache = {}

    def __repr__(self):
        return f"SmashAlgebra(dim={self.dim}, order={self.order})"

    def act_mono(self, g, alpha):
        """The automorphism g applied to e^(alpha)."""
        key = (g, alpha)
        hit = self._act_cache.get(key)
        if hit is None:
            m = self.action[g]
            hit = self.base.one()
            for i, a in enumerate(alpha):
                if not a:
                    continue
                image = {unit(self.dim, k): m[k][i] for k in range(self.dim) if m[k][i]}
                power = self.base.power(image, a)
                hit = self.base.mul(hit, {k: v / factorial(a) for k, v in power.items()})
            self._act_cache[key] = hit
        return dict(hit)

    def act(self, g, h):
        out = {}
        for alpha, c in h.items():
            add_scaled(out, self.act_mono(g, alpha), c)
        return out

    def one(self):
        return {(self.base.zero, 0): Fraction(1)}

    def mul(self, x, y):
        # (h1 # g1)(h2 # g2) = h1 h2^{g1} # g1 g2
        out = {}
        for (a1, g1), c1 in x.items():
            for (a2, g2), c2 in y.items():
                prod = self.base.mul({a1: Fraction(1)}, self.act_mono(g1, a2))
                g = self.table[g1][g2]
                for mu, c in prod.items():
                    add_term(out, (mu, g), c * c1 * c2)
        return out

    def counit(self, x):
        return sum((c for (a, g), c in x.items() if a == self.base.zero), Fraction(0))

    def coproduct(self, x, n=2):
        out = {}
        for (alpha, g), c in x.items():
            for parts in splits(alpha, n):
                add_term(out, tuple((p, g) for p in parts), c)
        return out

    def antipode(self, x):
        # S(h # g) = S(h)^{g^-1} # g^-1
        out = {}
        for (alpha, g), c in x.items():
            gi = self.inverse[g]
            for mu, v in self.act(gi, self.base.antipode_mono(alpha)).items():
                add_term(out, (mu, gi), c * v)
        return out

    def basis(self, max_degree):
        return [(a, g) for a in self.base.monomials(max_degree) for g in range(self.order)]

    def key_degree(self, key):
        return sum(key[0])

    def format_key(self, key):
        return f"e^({format_mi(key[0])})#{self.group_names[key[1]]}"


def smash_build(base, group_names, table, action):
    """Validate group table and action, then build the smash product."""
    n = len(group_names)
    if len(table) != n or any(len(row) != n for row in table):
        raise InvalidAction("group table has wrong shape")
    for g in range(n):
        if table[0][g] != g or table[g][0] != g:
            raise InvalidAction("the first group element must be the identity")
        if not any(table[g][h] == 0 for h in range(n)):
            raise InvalidAction(f"group element {group_names[g]} has no inverse")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise InvalidAction("group table is not associative")
    if len(action) != n:
        raise InvalidAction("one action matrix per group element is required")
    lie = base.lie
    dim = base.dim
    mats = [[list(map(as_fraction, row)) for row in m] for m in action]
    for g, m in enumerate(mats):
        if len(m) != dim or any(len(row) != dim for row in m):
            raise InvalidAction(f"action of {group_names[g]} has wrong shape")
        if dim and mat_inverse(m) is None:
            raise InvalidAction(f"action of {group_names[g]} is singular")
        col = [{k: m[k][j] for k in range(dim) if m[k][j]} for j in range(dim)]
        for i, j in itertools.product(range(dim), repeat=2):
            lhs = {}
            for k, c in lie.br(i, j).items():
                add_scaled(lhs, col[k], c)
            if lhs != lie.br_vec(col[i], col[j]):
                raise InvalidAction(
                    f"action of {group_names[g]} does not preserve [e{i + 1},e{j + 1}]")
    ident = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    if dim and mats[0] != ident:
        raise InvalidAction("the identity must act trivially")
    for a, b in itertools.product(range(n), repeat=2):
        if dim and mat_mul(mats[a], mats[b]) != mats[table[a][b]]:
            raise InvalidAction("action is not a group homomorphism")
    return SmashAlgebra(base, group_names, table, mats)


# -- axiom verification -----------------------------------------------------

@dataclass
class AxiomResult:
    name: str
    passed: bool
    witness: str = ""

    def line(self):
        if self.passed:
            return f"{self.name}: PASS"
        return f"{self.name}: FAIL witness={self.witness}"


def hopf_axiom_suite(alg, max_degree):
    """Exact check of the Hopf axioms on every basis element up to max_degree.

    Works for both :class:`HopfAlgebra` and :class:`SmashAlgebra`.
    Returns a list of :class:`AxiomResult`, one per axiom, in a fixed order.
    """
    if max_degree > alg.degree_cutoff:
        raise CutoffExceeded(max_degree, alg.degree_cutoff)
    basis = alg.basis(max_degree)
    checks = [
        ("coassociativity", _coassoc),
        ("counit", _counit_law),
        ("antipode", _antipode_law),
        ("antipode_involutive", _antipode_sq),
        ("cocommutativity", _cocomm),
    ]
    results = []
    for name, fn in checks:
        witness = None
        for key in basis:
            if not fn(alg, key):
                witness = alg.format_key(key)
                break
        results.append(AxiomResult(name, witness is None, witness or ""))
    return results


def _coassoc(alg, key):
    d = alg.coproduct({key: Fraction(1)}, 2)
    left, right = {}, {}
    for (a, b), c in d.items():
        for (a1, a2), v in alg.coproduct({a: Fraction(1)}, 2).items():
            add_term(left, (a1, a2, b), c * v)
        for (b1, b2), v in alg.coproduct({b: Fraction(1)}, 2).items():
            add_term(right, (a, b1, b2), c * v)
    return left == right == alg.coproduct({key: Fraction(1)}, 3)


def _counit_law(alg, key):
    d = alg.coproduct({key: Fraction(1)}, 2)
    left, right = {}, {}
    for (a, b), c in d.items():
        add_term(left, b, c * alg.counit({a: Fraction(1)}))
        add_term(right, a, c * alg.counit({b: Fraction(1)}))
    return left == right == {key: Fraction(1)}


def _antipode_law(alg, key):
    d = alg.coproduct({key: Fraction(1)}, 2)
    left, right = {}, {}
    for (a, b), c in d.items():
        add_scaled(left, alg.mul(alg.antipode({a: Fraction(1)}), {b: Fraction(1)}), c)
        add_scaled(right, alg.mul({a: Fraction(1)}, alg.antipode({b: Fraction(1)})), c)
    eps = alg.counit({key: Fraction(1)})
    target = {k: v * eps for k, v in alg.one().items()} if eps else {}
    return left == target and right == target


def _antipode_sq(alg, key):
    return alg.antipode(alg.antipode({key: Fraction(1)})) == {key: Fraction(1)}


def _cocomm(alg, key):
    d = alg.coproduct({key: Fraction(1)}, 2)
    return {(b, a): c for (a, b), c in d.items()} == d
