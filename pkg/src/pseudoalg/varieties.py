"""Polylinear pseudo-identities and variety membership.

An identity is a list of :class:`IdentityTerm`. Each term is a binary tree
over variables 0..n-1 with a sign. Evaluating a tree produces an element of
H^{(x)n} (x)_H P whose slots follow the leaf order of the tree; the twist
that puts slot p back at position ``leaves[p]`` is derived from the tree,
so identities are written exactly as they read.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import WrongHopfAlgebra
from .lin import add_scaled, nullspace
from .pseudo import CanonicalTensor, sigma_act, x_coeff


@dataclass(frozen=True)
class IdentityTerm:
    tree: object  # int leaf or pair of subtrees
    sign: int = 1

    def leaves(self):
        return tuple(_leaves(self.tree))

    def twist(self):
        return self.leaves()


def _leaves(tree):
    if isinstance(tree, int):
        yield tree
    else:
        for sub in tree:
            yield from _leaves(sub)


def _R(a, b, c, d):
    return (a, (b, (c, d)))


def _C(a, b, c, d):
    return ((a, b), (c, d))


IDENTITIES = {
    "commutativity": [IdentityTerm((0, 1)), IdentityTerm((1, 0), -1)],
    "anticommutativity": [IdentityTerm((0, 1)), IdentityTerm((1, 0))],
    "jacobi": [IdentityTerm((0, (1, 2))), IdentityTerm(((0, 1), 2), -1),
               IdentityTerm((1, (0, 2)), -1)],
    "associativity": [IdentityTerm(((0, 1), 2)), IdentityTerm((0, (1, 2)), -1)],
    # full linearization of ((aa)b)a = (aa)(ba) for a commutative product
    "jordan": [
        IdentityTerm(_R(0, 1, 2, 3)), IdentityTerm(_R(3, 1, 2, 0)),
        IdentityTerm(_R(2, 1, 0, 3)),
        IdentityTerm(_C(0, 1, 2, 3), -1), IdentityTerm(_C(0, 2, 1, 3), -1),
        IdentityTerm(_C(0, 3, 2, 1), -1),
    ],
}

VARIETIES = {
    "commutative": ("commutativity",),
    "jordan": ("commutativity", "jordan"),
    "lie": ("anticommutativity", "jacobi"),
    "associative": ("associativity",),
}


def arity_of(terms):
    return len(terms[0].leaves())


def eval_tree(P, tree, args):
    if isinstance(tree, int):
        return CanonicalTensor.from_module(args[tree])
    left, right = tree
    return P.mul(eval_tree(P, left, args), eval_tree(P, right, args))


def eval_identity(P, terms, args):
    """Canonical form of sum sign * twist(tree(args)); zero iff the identity holds."""
    n = arity_of(terms)
    if len(args) != n:
        raise ValueError(f"identity takes {n} arguments, got {len(args)}")
    total = {}
    for term in terms:
        value = sigma_act(P.hopf, term.twist(), eval_tree(P, term.tree, args))
        add_scaled(total, value.terms, term.sign)
    return CanonicalTensor(n, total)


@dataclass
class IdentityResult:
    name: str
    passed: bool
    witness: tuple = ()
    residual: object = None

    def line(self, names=None):
        if self.passed:
            return f"{self.name}: PASS"
        shown = ",".join(names[i] if names else str(i) for i in self.witness)
        return f"{self.name}: FAIL tuple=({shown}) residual={self.residual.format(names)}"


@dataclass
class VarietyReport:
    variety: str
    results: list

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    @property
    def witness(self):
        return next((r for r in self.results if not r.passed), None)

    def lines(self, names=None):
        return [r.line(names) for r in self.results]


def check_identity(P, name, terms=None):
    terms = terms or IDENTITIES[name]
    n = arity_of(terms)
    for idx in itertools.product(range(P.rank), repeat=n):
        args = [P.basis_element(i) for i in idx]
        residual = eval_identity(P, terms, args)
        if residual:
            return IdentityResult(name, False, idx, residual)
    return IdentityResult(name, True)


def check_variety(P, which):
    """Run every identity of the variety over all basis tuples."""
    if which not in VARIETIES:
        raise ValueError(f"unknown variety {which!r}")
    return VarietyReport(which, [check_identity(P, name) for name in VARIETIES[which]])


def n_product(P, a, b, n):
    """The conformal n-product a (.)_{t^n} b, for dim h = 1."""
    if P.hopf.dim != 1:
        raise WrongHopfAlgebra("n-products need a one-dimensional h")
    return x_coeff(P.hopf, P.mul_elements(a, b), {(n,): Fraction(1)})


def ann_l(P, probe_degree):
    """Echelon basis of {a : deg a <= probe, a * v_j = 0 for all j}."""
    H = P.hopf
    H.check_degree(probe_degree)
    unknowns = [(alpha, i) for alpha in H.monomials(probe_degree) for i in range(P.rank)]
    columns = []
    rows = {}
    for key in unknowns:
        col = {}
        for j in range(P.rank):
            prod = P.mul_elements({key: Fraction(1)}, P.basis_element(j))
            for tkey, c in prod.terms.items():
                col[(j, tkey)] = c
                rows.setdefault((j, tkey), len(rows))
        columns.append(col)
    matrix = [[Fraction(0)] * len(unknowns) for _ in rows]
    for c, col in enumerate(columns):
        for key, v in col.items():
            matrix[rows[key]][c] = v
    basis = nullspace(matrix, len(unknowns))
    out = []
    for vec in basis:
        out.append({unknowns[k]: v for k, v in enumerate(vec) if v})
    return out
