"""The dual algebra X = H* and Fourier transforms on tensor powers of H.

An element of X is a finitely supported functional ``{nu: c}`` meaning
``sum c t^nu`` where ``t^nu`` is dual to ``e^(nu)``. With divided powers
on the H side the product on X is plain monomial multiplication,
``t^mu t^nu = t^(mu+nu)``.

The H-actions on X and the coproduct of X land, in general, in formal
series. They are therefore evaluated only on components of degree at most
a declared bound (by default, as far as the degree cutoff allows); the
components that are returned are exact.

Tensor elements of H^{(x)n} are dicts ``{(alpha_1, ..., alpha_n): c}``.
"""

from fractions import Fraction

from .errors import ArityMismatch
from .hopf import degree, mi_add, splits
from .lin import add_scaled, add_term


def pair_eval(x, h):
    """<x, h> for x in X and h in H."""
    return sum((c * h[nu] for nu, c in x.items() if nu in h), Fraction(0))


def x_mul(x, y):
    out = {}
    for mu, a in x.items():
        for nu, b in y.items():
            add_term(out, mi_add(mu, nu), a * b)
    return out


def _bound(H, h, max_degree):
    if max_degree is None:
        return H.degree_cutoff - max(degree(h), 0)
    return max_degree


def h_action(H, side, h, x, max_degree=None):
    """Right action <x h, g> = <x, g S(h)> or left action <h x, g> = <x, S(h) g>.

    Components t^mu are computed for |mu| <= max_degree.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    if not x or not h:
        return {}
    bound = _bound(H, h, max_degree)
    s_h = H.antipode(h)
    out = {}
    for mu in H.monomials(bound):
        g = {mu: Fraction(1)}
        prod = H.mul(g, s_h) if side == "right" else H.mul(s_h, g)
        add_term(out, mu, pair_eval(x, prod))
    return out


def s_star(H, x, max_degree=None):
    """The transpose of the antipode: <S* x, h> = <x, S(h)>."""
    bound = H.degree_cutoff if max_degree is None else max_degree
    out = {}
    for mu in H.monomials(bound):
        add_term(out, mu, pair_eval(x, H.antipode_mono(mu)))
    return out


def delta_x(H, x, probe_degree):
    """Truncated coproduct of X: pairs (x S(e^(nu)), t^nu) for |nu| <= probe.

    Pairs whose first component vanishes are dropped.
    """
    H.check_degree(probe_degree)
    out = []
    for nu in H.monomials(probe_degree):
        first = h_action(H, "right", H.antipode_mono(nu), x)
        if first:
            out.append((first, nu))
    return out


def _arity(t):
    return len(next(iter(t)))


def _slot_products(H, factors):
    """Expand a product of per-slot H-elements into a tensor dict."""
    out = {(): Fraction(1)}
    for f in factors:
        nxt = {}
        for keys, c in out.items():
            for alpha, v in f.items():
                add_term(nxt, keys + (alpha,), c * v)
        out = nxt
    return out


def fourier(H, kind, t):
    """The Fourier transforms F, Finv, Fprime, FprimeInv on H^{(x)n}, n >= 2.

    F:         h_1 x ... x h_n x f  ->  h_1 f_(1) x ... x h_n f_(n) x f_(n+1)
    Finv:      as F with S(f_(i)) in place of f_(i)
    Fprime:    h x f_1 x ... x f_n  ->  h_(1) x h_(2) f_1 x ... x h_(n+1) f_n
    FprimeInv: as Fprime with S(h_(i)) for i >= 2
    """
    if not t:
        return {}
    n = _arity(t)
    if n < 2:
        raise ArityMismatch("Fourier transforms need arity >= 2")
    out = {}
    for keys, c in t.items():
        if kind in ("F", "Finv"):
            f = keys[-1]
            for parts in splits(f, n):
                factors = []
                for h, p in zip(keys[:-1], parts[:-1]):
                    if kind == "F":
                        factors.append(H.pbw_mul(h, p))
                    else:
                        factors.append(H.mul_s(h, p))
                factors.append({parts[-1]: Fraction(1)})
                add_scaled(out, _slot_products(H, factors), c)
        elif kind in ("Fprime", "FprimeInv"):
            h = keys[0]
            for parts in splits(h, n):
                factors = [{parts[0]: Fraction(1)}]
                for p, f in zip(parts[1:], keys[1:]):
                    if kind == "Fprime":
                        factors.append(H.pbw_mul(p, f))
                    else:
                        factors.append(H.mul(H.antipode_mono(p), {f: Fraction(1)}))
                add_scaled(out, _slot_products(H, factors), c)
        else:
            raise ValueError(f"unknown Fourier transform {kind!r}")
    return out


def eval_map(a):
    """The evaluation map x (x) y -> <x (x) y, a> for a in H (x) H, as a function."""
    def pi(x, y):
        total = Fraction(0)
        for (h1, h2), c in a.items():
            total += c * x.get(h1, 0) * y.get(h2, 0)
        return total
    return pi


def eval_after_f(H, a, x, y, probe_degree):
    """pi(F(x (x) y)) computed through the truncated coproduct of X.

    F(x (x) y) = x y_(1) (x) y_(2); only components up to ``probe_degree``
    of y_(2) are used, which is exact as soon as probe_degree covers the
    second tensor slot of ``a``.
    """
    pi = eval_map(a)
    total = Fraction(0)
    for first, nu in delta_x(H, y, probe_degree):
        total += pi(x_mul(x, first), {nu: Fraction(1)})
    return total
