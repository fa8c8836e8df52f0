"""Canonical forms in H^{(x)n} (x)_H P and finite pseudoalgebras.

A module element of P = H (x) V is a dict ``{(beta, label): c}`` standing
for ``sum c e^(beta) (x) v_label``. Labels are usually basis indices, but
any hashable label works, which is how the ambient module H (x) H is
handled by the constructions.

An element of H^{(x)n} (x)_H P is kept in canonical form, with 1 in the
last tensor slot. The terms of a :class:`CanonicalTensor` of arity n are
keyed ``(slots, beta, label)`` where ``slots`` holds the n-1 leading
multi-indices.
"""

from fractions import Fraction

from .dual import pair_eval
from .errors import ArityMismatch, RankMismatch
from .hopf import deglex_key, format_mi, splits
from .lin import add_scaled, add_term


def act(H, h, m):
    """Left action h . m on a module element."""
    out = {}
    for alpha, c in h.items():
        for (beta, label), v in m.items():
            for mu, w in H.pbw_mul(alpha, beta).items():
                add_term(out, (mu, label), c * v * w)
    return out


def format_module(m, names=None):
    if not m:
        return "0"
    parts = []
    for (beta, label), c in sorted(m.items(), key=lambda kv: _module_key(kv[0])):
        name = _label_name(label, names)
        parts.append(f"{c} e^({format_mi(beta)}) {name}")
    return " + ".join(parts)


def _label_name(label, names):
    if names is not None and isinstance(label, int):
        return names[label]
    if isinstance(label, tuple):
        return f"e^({format_mi(label)})"
    return f"v{label}"


def _module_key(key):
    beta, label = key
    return (deglex_key(beta), repr(label))


class CanonicalTensor:
    """An element of H^{(x)n} (x)_H P with last slot 1; compared by terms."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        if arity < 1:
            raise ArityMismatch("arity must be at least 1")
        self.arity = arity
        self.terms = terms if terms is not None else {}

    @classmethod
    def from_module(cls, m):
        """The arity-1 tensor 1 (x)_H m."""
        return cls(1, {((), beta, label): c for (beta, label), c in m.items()})

    def __eq__(self, other):
        if not isinstance(other, CanonicalTensor):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"CanonicalTensor({self.arity}, {self.format()})"

    def _check(self, other):
        if self.arity != other.arity:
            raise ArityMismatch(f"arities {self.arity} and {other.arity} differ")

    def __add__(self, other):
        self._check(other)
        return CanonicalTensor(self.arity, add_scaled(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return CanonicalTensor(self.arity, add_scaled(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not c:
            return CanonicalTensor(self.arity)
        return CanonicalTensor(self.arity, {k: c * v for k, v in self.terms.items()})

    def degree(self):
        """Top H-degree over all slots and the module part."""
        return max((sum(map(sum, slots)) + sum(beta)
                    for slots, beta, _ in self.terms), default=-1)

    def rows(self):
        """``{slots: module element}``, the grouped view used for printing."""
        out = {}
        for (slots, beta, label), c in self.terms.items():
            out.setdefault(slots, {})[(beta, label)] = c
        return out

    def module_part(self):
        """The module element of an arity-1 tensor."""
        if self.arity != 1:
            raise ArityMismatch("module_part needs arity 1")
        return {(beta, label): c for (_, beta, label), c in self.terms.items()}

    def format(self, names=None):
        if not self.terms:
            return "0"
        rows = self.rows()
        out = []
        for slots in sorted(rows, key=lambda s: [deglex_key(a) for a in s]):
            head = "|".join(format_mi(a) for a in slots)
            out.append(f"({head}) -> {format_module(rows[slots], names)}")
        return "; ".join(out)


def normalize(H, arity, raw):
    """Canonical form of ``sum c (e^(f_1) (x) ... (x) e^(f_n)) (x)_H e^(beta) v``.

    ``raw`` is a dict keyed ``((f_1, ..., f_n), beta, label)``. Uses
    (f_1 (x) ... (x) f_n) (x)_H p
      = sum (f_1 S(f_n(1)) (x) ... (x) f_{n-1} S(f_n(n-1)) (x) 1) (x)_H f_n(n) p.
    """
    out = {}
    zero = H.zero
    for (full, beta, label), c in raw.items():
        if len(full) != arity:
            raise ArityMismatch(f"expected {arity} slots, got {len(full)}")
        last = full[-1]
        if last == zero:
            add_term(out, (tuple(full[:-1]), beta, label), c)
            continue
        for parts in splits(last, arity):
            acc = {(): Fraction(1)}
            for f, nu in zip(full[:-1], parts[:-1]):
                nxt = {}
                for keys, v in acc.items():
                    for mu, w in H.mul_s(f, nu).items():
                        add_term(nxt, keys + (mu,), v * w)
                acc = nxt
            moved = H.pbw_mul(parts[-1], beta)
            for slots, v in acc.items():
                for mu, w in moved.items():
                    add_term(out, (slots, mu, label), c * v * w)
    return CanonicalTensor(arity, out)


def expand(H, A):
    """The raw form of A with the implicit last slot 1 made explicit."""
    zero = H.zero
    return {(slots + (zero,), beta, label): c for (slots, beta, label), c in A.terms.items()}


def sigma_act(H, perm, A):
    """Permute tensor slots: position perm[p] receives slot p (0-based).

    Composition is ``sigma_act(s o t, A) == sigma_act(s, sigma_act(t, A))``.
    """
    n = A.arity
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ArityMismatch(f"{perm!r} is not a permutation of {n} slots")
    if list(perm) == list(range(n)):
        return CanonicalTensor(n, dict(A.terms))
    raw = {}
    for (full, beta, label), c in expand(H, A).items():
        moved = [None] * n
        for p, q in enumerate(perm):
            moved[q] = full[p]
        add_term(raw, (tuple(moved), beta, label), c)
    return normalize(H, n, raw)


def slot_mul(H, factors, A):
    """Left-multiply tensor slots by H-elements and renormalize.

    ``factors`` has one H-element per slot (None means 1).
    """
    n = A.arity
    if len(factors) != n:
        raise ArityMismatch(f"{len(factors)} factors for arity {n}")
    raw = {}
    for (full, beta, label), c in expand(H, A).items():
        acc = {(): Fraction(c)}
        for h, f in zip(factors, full):
            prod = {f: Fraction(1)} if h is None else H.mul(h, {f: Fraction(1)})
            nxt = {}
            for keys, v in acc.items():
                for mu, w in prod.items():
                    add_term(nxt, keys + (mu,), v * w)
            acc = nxt
        for keys, v in acc.items():
            add_term(raw, (keys, beta, label), v)
    return normalize(H, n, raw)


def module_map(H, A, fn):
    """Apply an H-linear map ``fn: (beta, label) -> module element`` to the module part."""
    out = {}
    for (slots, beta, label), c in A.terms.items():
        for (b2, l2), v in fn(beta, label).items():
            add_term(out, (slots, b2, l2), c * v)
    return CanonicalTensor(A.arity, out)


def x_coeff(H, A, x):
    """Fourier coefficient sum <x, S(h_i)> c_i of A = sum (h_i (x) 1) (x)_H c_i."""
    if A.arity != 2:
        raise ArityMismatch("x_coeff needs arity 2")
    out = {}
    for ((h,), beta, label), c in A.terms.items():
        v = pair_eval(x, H.antipode_mono(h))
        if v:
            add_term(out, (beta, label), c * v)
    return out


def coefficients(H, A):
    """All nonzero Fourier coefficients ``{nu: x_coeff(A, t^nu)}``."""
    out = {}
    d = A.degree()
    if d < 0:
        return out
    for nu in H.monomials(d):
        c = x_coeff(H, A, {nu: Fraction(1)})
        if c:
            out[nu] = c
    return out


def from_coefficients(H, coeffs):
    """Rebuild an arity-2 tensor from its Fourier coefficients.

    Inverse of :func:`coefficients`: A = sum_nu (S(e^(nu)) (x) 1) (x)_H c_nu.
    """
    out = {}
    for nu, m in coeffs.items():
        for mu, w in H.antipode_mono(nu).items():
            for (beta, label), c in m.items():
                add_term(out, ((mu,), beta, label), w * c)
    return CanonicalTensor(2, out)


class PseudoAlgebra:
    """A pseudoproduct on the free module H (x) V, given by a total table.

    ``table[(i, j)]`` is the canonical arity-2 tensor v_i * v_j. ``sectors``
    optionally records a grading label per basis vector.
    """

    def __init__(self, hopf, names, table, sectors=None):
        self.hopf = hopf
        self.names = list(names)
        self.rank = len(self.names)
        self.table = {}
        for i in range(self.rank):
            for j in range(self.rank):
                entry = table.get((i, j))
                if entry is None:
                    entry = CanonicalTensor(2)
                if entry.arity != 2:
                    raise ArityMismatch(f"table entry ({i},{j}) has arity {entry.arity}")
                self.table[(i, j)] = entry
        for (i, j) in table:
            if not (0 <= i < self.rank and 0 <= j < self.rank):
                raise RankMismatch(f"table entry ({i},{j}) outside rank {self.rank}")
        self.sectors = list(sectors) if sectors is not None else None
        self._cache = {}

    def __repr__(self):
        return f"PseudoAlgebra(rank={self.rank}, dim={self.hopf.dim})"

    def basis_element(self, i, alpha=None):
        if alpha is None:
            alpha = self.hopf.zero
        return {(alpha, i): Fraction(1)}

    def table_degree(self):
        return max((t.degree() for t in self.table.values()), default=-1)

    def _mono_mul(self, beta, i, gamma, j):
        key = (beta, i, gamma, j)
        hit = self._cache.get(key)
        if hit is None:
            H = self.hopf
            raw = {}
            for ((h,), mu, k), c in self.table[(i, j)].terms.items():
                for lead, w in H.pbw_mul(beta, h).items():
                    add_term(raw, ((lead, gamma), mu, k), c * w)
            hit = normalize(H, 2, raw).terms
            self._cache[key] = hit
        return hit

    def mul_elements(self, a, b):
        """a * b for module elements, as a canonical arity-2 tensor."""
        out = {}
        for (beta, i), c in a.items():
            for (gamma, j), d in b.items():
                add_scaled(out, self._mono_mul(beta, i, gamma, j), c * d)
        return CanonicalTensor(2, out)

    def mul(self, A, B):
        """(F (x)_H a) * (G (x)_H b) for canonical tensors of arities n and m."""
        H = self.hopf
        n, m = A.arity, B.arity
        out = {}
        for (F, beta, i), c in A.terms.items():
            for (G, gamma, j), d in B.terms.items():
                prod = self._mono_mul(beta, i, gamma, j)
                for ((X,), mu, k), e in prod.items():
                    coeff = c * d * e
                    for parts in splits(X, n):
                        acc = {(): coeff}
                        for f, p in zip(F, parts[:-1]):
                            nxt = {}
                            for keys, v in acc.items():
                                for lead, w in H.pbw_mul(f, p).items():
                                    add_term(nxt, keys + (lead,), v * w)
                            acc = nxt
                        tail = (parts[-1],) + G
                        for keys, v in acc.items():
                            add_term(out, (keys + tail, mu, k), v)
        return CanonicalTensor(n + m, out)

    def support(self, i, j):
        """The multi-indices nu with a nonzero t^nu-coefficient of v_i * v_j."""
        return set(coefficients(self.hopf, self.table[(i, j)]))

    def with_table(self, table, names=None, sectors=None):
        return PseudoAlgebra(self.hopf, names or self.names, table,
                             sectors if sectors is not None else self.sectors)
