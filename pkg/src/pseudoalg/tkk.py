"""Conformal endomorphisms, pseudoderivations and the TKK construction.

A conformal endomorphism of P = H (x) V is stored by its values on the
generators 1 (x) v_j; everything else follows from phi(h a) = (1 (x) h) phi(a).
Applied to an element of H^{(x)n} (x)_H P it adds a new first slot.

Elements of the structure algebra S(J) = L(J) + Derr(J) are encoded as
module elements with two kinds of labels, so that the generic
canonical-form code handles families of them:

* ``(beta, ("m", k))`` is the coordinate of e^(beta) v_k in the
  multiplication part a of L_a;
* ``(X, ("d", j, beta, k))`` is the coefficient of
  (e^(X) (x) 1) (x)_H e^(beta) v_k in D(v_j).

In both cases H acts on the first component, which is exactly the
H-module structure of S(J). An arity-2 family of structure elements is a
:class:`CanonicalTensor` over these labels.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ClosureError, CutoffExceeded, JordanPreconditionFailed, S0NotFree
from .hopf import deglex_key, splits
from .lin import Echelon, add_scaled, add_term
from .pseudo import CanonicalTensor, PseudoAlgebra, act, coefficients, sigma_act, slot_mul
from .varieties import check_variety

SWAP12 = (1, 0, 2)


class CendElement:
    """phi with phi * (1 (x) v_j) = values[j], an arity-2 canonical tensor."""

    __slots__ = ("P", "values", "_mono")

    def __init__(self, P, values):
        if len(values) != P.rank:
            raise ValueError(f"need {P.rank} values, got {len(values)}")
        self.P = P
        self.values = list(values)
        self._mono = {}

    @classmethod
    def zero(cls, P):
        return cls(P, [CanonicalTensor(2) for _ in range(P.rank)])

    def __eq__(self, other):
        return isinstance(other, CendElement) and self.values == other.values

    def __bool__(self):
        return any(self.values)

    def __add__(self, other):
        return CendElement(self.P, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return CendElement(self.P, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c):
        return CendElement(self.P, [v.scale(c) for v in self.values])

    def mono(self, beta, j):
        """phi * (e^(beta) v_j) as canonical terms."""
        key = (beta, j)
        hit = self._mono.get(key)
        if hit is None:
            value = self.values[j]
            if beta == self.P.hopf.zero:
                hit = value.terms
            else:
                hit = slot_mul(self.P.hopf, (None, {beta: Fraction(1)}), value).terms
            self._mono[key] = hit
        return hit

    def to_vector(self):
        out = {}
        for j, value in enumerate(self.values):
            for ((X,), beta, k), c in value.terms.items():
                out[(X, ("d", j, beta, k))] = c
        return out

    @classmethod
    def from_vector(cls, P, vec):
        values = [{} for _ in range(P.rank)]
        for (X, label), c in vec.items():
            if label[0] == "d":
                _, j, beta, k = label
                values[j][((X,), beta, k)] = c
        return cls(P, [CanonicalTensor(2, v) for v in values])


def left_mul(P, a):
    return CendElement(P, [P.mul_elements(a, P.basis_element(j)) for j in range(P.rank)])


def cend_apply(phi, m):
    """phi * m for a module element m; arity 2."""
    out = {}
    for (beta, j), c in m.items():
        add_scaled(out, phi.mono(beta, j), c)
    return CanonicalTensor(2, out)


def cend_apply_tensor(phi, A):
    """phi applied to the module part of A; the new slot comes first."""
    out = {}
    for (F, beta, j), c in A.terms.items():
        for ((X,), mu, k), v in phi.mono(beta, j).items():
            add_term(out, ((X,) + F, mu, k), c * v)
    return CanonicalTensor(A.arity + 1, out)


def cend_compose(phi, psi):
    """The arity-3 values phi * (psi * v_j)."""
    return [cend_apply_tensor(phi, value) for value in psi.values]


def split_family(P, values3):
    """Write arity-3 values V_j as sum_alpha (e^(alpha) (x) 1) (x)_H chi_alpha.

    A term (e^(h) (x) e^(g) (x) 1) (x)_H m contributes
    [e^(alpha) in e^(h) S(e^(g - nu))] (e^(nu) (x) 1) (x)_H m to chi_alpha(v_j).
    Returns ``{alpha: CendElement}`` without zero members.
    """
    H = P.hopf
    raw = {}
    for j, value in enumerate(values3):
        for ((h, g), mu, k), c in value.terms.items():
            for rest, nu in splits(g, 2):
                for alpha, w in H.mul_s(h, rest).items():
                    bucket = raw.setdefault(alpha, [{} for _ in range(P.rank)])
                    add_term(bucket[j], ((nu,), mu, k), c * w)
    out = {}
    for alpha, vals in raw.items():
        elem = CendElement(P, [CanonicalTensor(2, v) for v in vals])
        if elem:
            out[alpha] = elem
    return out


def cend_bracket_values(phi, psi):
    H = phi.P.hopf
    return [a - sigma_act(H, SWAP12, b)
            for a, b in zip(cend_compose(phi, psi), cend_compose(psi, phi))]


def cend_bracket(phi, psi):
    """[phi * psi] as the family ``{alpha: chi_alpha}``.

    [phi * psi] * v_j = phi * (psi * v_j) - sigma12 psi * (phi * v_j)
                      = sum_alpha (e^(alpha) (x) 1 (x) 1)(Delta (x) id)(chi_alpha * v_j).
    """
    return split_family(phi.P, cend_bracket_values(phi, psi))


def apply_family(P, family, m):
    """(sum_alpha (e^(alpha) (x) 1) (x)_H chi_alpha) * m, an arity-3 tensor."""
    H = P.hopf
    out = {}
    for alpha, chi in family.items():
        for ((Z,), mu, k), c in cend_apply(chi, m).terms.items():
            for z1, z2 in splits(Z, 2):
                for lead, w in H.pbw_mul(alpha, z1).items():
                    add_term(out, ((lead, z2), mu, k), c * w)
    return CanonicalTensor(3, out)


def family_coefficients(P, family):
    """Fourier coefficients ``{nu: CendElement}`` of a Cend family."""
    H = P.hopf
    tensor = family_tensor(family)
    return {nu: CendElement.from_vector(P, vec) for nu, vec in coefficients(H, tensor).items()}


def family_tensor(family):
    out = {}
    for alpha, chi in family.items():
        for key, c in chi.to_vector().items():
            out[((alpha,),) + key] = c
    return CanonicalTensor(2, out)


@dataclass
class DerivationResult:
    passed: bool
    witness: tuple = ()
    residual: object = None

    def line(self, names=None):
        if self.passed:
            return "pseudoderivation: PASS"
        shown = ",".join(names[i] if names else str(i) for i in self.witness)
        return f"pseudoderivation: FAIL tuple=({shown}) residual={self.residual.format(names)}"


def derivation_residual(P, T, i, j):
    """T*(v_i*v_j) - (T*v_i)*v_j - sigma12(v_i*(T*v_j))."""
    H = P.hopf
    a, b = P.basis_element(i), P.basis_element(j)
    lhs = cend_apply_tensor(T, P.mul_elements(a, b))
    first = P.mul(T.values[i], CanonicalTensor.from_module(b))
    second = sigma_act(H, SWAP12, P.mul(CanonicalTensor.from_module(a), T.values[j]))
    return lhs - first - second


def is_pseudoderivation(P, T):
    for i, j in itertools.product(range(P.rank), repeat=2):
        residual = derivation_residual(P, T, i, j)
        if residual:
            return DerivationResult(False, (i, j), residual)
    return DerivationResult(True)


# -- the structure algebra --------------------------------------------------

def mult_vector(a):
    return {(beta, ("m", k)): c for (beta, k), c in a.items()}


def split_vector(P, vec):
    """(multiplication part, CendElement) of a structure vector."""
    mult = {}
    for (beta, label), c in vec.items():
        if label[0] == "m":
            mult[(beta, label[1])] = c
    return mult, CendElement.from_vector(P, vec)


def star(vec):
    """Sigma* = -L_a + D."""
    return {key: (-c if key[1][0] == "m" else c) for key, c in vec.items()}


def structure_act(P, vec, m):
    """(L_a + D) * m = a * m + D * m."""
    a, D = split_vector(P, vec)
    return P.mul_elements(a, m) + cend_apply(D, m)


def family_from_mult(A):
    """L_A for an arity-2 tensor A over J, as a structure family."""
    return CanonicalTensor(2, {(slots, beta, ("m", k)): c
                               for (slots, beta, k), c in A.terms.items()})


def u_op(P, a, b):
    """U_{a,b} = L_{a*b} + [L_a * L_b] as an arity-2 family."""
    mult = family_from_mult(P.mul_elements(a, b))
    der = family_tensor(cend_bracket(left_mul(P, a), left_mul(P, b)))
    return mult + der


def u_star(P, a, b):
    """U*_{a,b} = -L_{a*b} + [L_a * L_b]."""
    return CanonicalTensor(2, star_terms(u_op(P, a, b).terms))


def star_terms(terms):
    return {key: (-c if key[2][0] == "m" else c) for key, c in terms.items()}


def structure_bracket(P, s1, s2):
    """[(L_a + D) * (L_b + T)] = L_{D*b} - sigma12 L_{T*a} + [L_a*L_b] + [D*T]."""
    H = P.hopf
    a, D = split_vector(P, s1)
    b, T = split_vector(P, s2)
    out = family_from_mult(cend_apply(D, b))
    out = out - sigma_act(H, (1, 0), family_from_mult(cend_apply(T, a)))
    values = [x + y for x, y in zip(cend_bracket_values(left_mul(P, a), left_mul(P, b)),
                                    cend_bracket_values(D, T))]
    return out + family_tensor(split_family(P, values))


def vector_degree(vec):
    return max((sum(beta) for beta, _ in vec), default=-1)


class S0Basis:
    """Free H-module generators of S_0(J) at a degree bound."""

    def __init__(self, P, generators, echelon, bound):
        self.P = P
        self.generators = generators
        self.echelon = echelon
        self.bound = bound

    @property
    def rank(self):
        return len(self.generators)

    @property
    def scalar_rank(self):
        return self.echelon.rank

    def decompose(self, vec):
        """H-coefficients ``{k: h_k}`` with vec = sum h_k . generator_k."""
        if vector_degree(vec) > self.bound:
            raise CutoffExceeded(vector_degree(vec), self.bound)
        sol = self.echelon.solve(vec)
        if sol is None:
            raise ClosureError("element is outside the span of S0")
        out = {}
        for (gamma, k), c in sol.items():
            add_term(out.setdefault(k, {}), gamma, c)
        return {k: h for k, h in out.items() if h}


def _label_key(label):
    return tuple((0, x) if isinstance(x, int) else (1, str(x)) for x in label)


def s0_basis(P, degree_bound):
    """Echelonized free generators of the H-span of all U-coefficients."""
    H = P.hopf
    H.check_degree(degree_bound)
    candidates = []
    for i, j in itertools.product(range(P.rank), repeat=2):
        fam = u_op(P, P.basis_element(i), P.basis_element(j))
        for nu, vec in sorted(coefficients(H, fam).items(), key=lambda kv: deglex_key(kv[0])):
            candidates.append(vec)
    candidates.sort(key=vector_degree)

    def pivot_key(key):
        beta, label = key
        return (deglex_key(beta), _label_key(label))

    ech = Echelon(sort_key=pivot_key)
    gens = []
    for vec in candidates:
        d = vector_degree(vec)
        if d > degree_bound:
            raise CutoffExceeded(d, degree_bound)
        if ech.contains(vec):
            continue
        k = len(gens)
        gens.append(vec)
        for gamma in H.monomials(degree_bound - d):
            row = act(H, {gamma: Fraction(1)}, vec)
            if not ech.insert(row, (gamma, k)):
                raise S0NotFree(f"generator {k + 1} has a torsion relation at e^{gamma}")
    return S0Basis(P, gens, ech, degree_bound)


# -- T(J) -------------------------------------------------------------------

class TKKAlgebra:
    """T(J) = J- + S0(J) + J+ with sector bookkeeping."""

    def __init__(self, algebra, s0, r):
        self.algebra = algebra
        self.s0 = s0
        self.r = r
        self.s = s0.rank

    def minus(self, i):
        return i

    def s0_index(self, k):
        return self.r + k

    def plus(self, i):
        return self.r + self.s + i

    def sector_of(self, idx):
        return self.algebra.sectors[idx]

    def embedding(self, k):
        """The structure element behind S0 generator k."""
        return self.s0.generators[k]


def _relabel(A, fn):
    out = {}
    for (slots, beta, k), c in A.terms.items():
        add_term(out, (slots, beta, fn(k)), c)
    return CanonicalTensor(A.arity, out)


def _decompose_family(s0, fam, offset):
    out = {}
    for slots, vec in fam.rows().items():
        for k, h in s0.decompose(vec).items():
            for gamma, c in h.items():
                add_term(out, (slots, gamma, offset + k), c)
    return CanonicalTensor(2, out)


def sector_grammar(T):
    """None if brackets respect the grading, else the offending pair."""
    P = T.algebra
    allowed = {("-", "+"): {"0"}, ("+", "-"): {"0"}, ("-", "-"): set(), ("+", "+"): set(),
               ("0", "-"): {"-"}, ("-", "0"): {"-"}, ("0", "+"): {"+"}, ("+", "0"): {"+"},
               ("0", "0"): {"0"}}
    for (i, j), entry in P.table.items():
        want = allowed[(P.sectors[i], P.sectors[j])]
        for _, _, k in entry.terms:
            if P.sectors[k] not in want:
                return (i, j)
    return None


def tkk_build(J, degree_bound, check=True):
    """Assemble T(J) and validate it as a graded Lie pseudoalgebra."""
    H = J.hopf
    if check:
        report = check_variety(J, "jordan")
        if not report.passed:
            raise JordanPreconditionFailed(report.witness.line(J.names))
    s0 = s0_basis(J, degree_bound)
    r, s = J.rank, s0.rank
    minus = lambda k: k  # noqa: E731
    plus = lambda k: r + s + k  # noqa: E731
    names = ([f"{n}-" for n in J.names] + [f"U{k + 1}" for k in range(s)]
             + [f"{n}+" for n in J.names])
    sectors = ["-"] * r + ["0"] * s + ["+"] * r
    table = {}
    basis = [J.basis_element(i) for i in range(r)]
    for i, j in itertools.product(range(r), repeat=2):
        fam = u_op(J, basis[i], basis[j])
        table[(minus(i), plus(j))] = _decompose_family(s0, fam, r)
        table[(plus(i), minus(j))] = _decompose_family(
            s0, CanonicalTensor(2, star_terms(fam.terms)), r)
    for k, sigma in enumerate(s0.generators):
        for i in range(r):
            act_minus = _relabel(structure_act(J, sigma, basis[i]), minus)
            act_plus = _relabel(structure_act(J, star(sigma), basis[i]), plus)
            table[(r + k, minus(i))] = act_minus
            table[(r + k, plus(i))] = act_plus
            table[(minus(i), r + k)] = -sigma_act(H, (1, 0), act_minus)
            table[(plus(i), r + k)] = -sigma_act(H, (1, 0), act_plus)
        for l, other in enumerate(s0.generators):
            fam = structure_bracket(J, sigma, other)
            table[(r + k, r + l)] = _decompose_family(s0, fam, r)
    algebra = PseudoAlgebra(H, names, table, sectors)
    T = TKKAlgebra(algebra, s0, r)
    if check:
        bad = sector_grammar(T)
        if bad is not None:
            raise ClosureError(f"sector grammar violated at {bad}")
        report = check_variety(algebra, "lie")
        if not report.passed:
            raise ClosureError(report.witness.line(names))
    return T
