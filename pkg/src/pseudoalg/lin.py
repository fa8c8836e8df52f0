"""Sparse exact linear algebra over the rationals.

Vectors are plain dicts mapping a hashable key to a nonzero Fraction.
Zero entries are never stored, so ``not v`` tests for the zero vector.
"""

from fractions import Fraction


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def add_term(vec, key, coeff):
    if not coeff:
        return
    value = vec.get(key, 0) + coeff
    if value:
        vec[key] = value
    else:
        vec.pop(key, None)


def add_scaled(dst, src, coeff=1):
    """dst += coeff * src, in place."""
    if not coeff:
        return dst
    for key, value in src.items():
        add_term(dst, key, coeff * value)
    return dst


def scaled(vec, coeff):
    if not coeff:
        return {}
    return {key: coeff * value for key, value in vec.items()}


def combine(*pairs):
    """Linear combination of (coeff, vector) pairs."""
    out = {}
    for coeff, vec in pairs:
        add_scaled(out, vec, coeff)
    return out


def relabel(vec, fn):
    out = {}
    for key, value in vec.items():
        add_term(out, fn(key), value)
    return out


class Echelon:
    """Incrementally built row echelon form with provenance tracking.

    Each inserted row carries a tag; :meth:`solve` expresses a vector as a
    combination of the tagged rows, or returns None when it is outside the
    span.
    """

    def __init__(self, sort_key=None):
        self._sort_key = sort_key
        self._pivots = []  # (pivot key, row normalised to 1 at pivot, combo)
        self._pivot_set = set()

    def __len__(self):
        return len(self._pivots)

    @property
    def rank(self):
        return len(self._pivots)

    def _reduce(self, vec, combo):
        vec = dict(vec)
        for pivot, row, row_combo in self._pivots:
            c = vec.get(pivot)
            if c:
                add_scaled(vec, row, -c)
                add_scaled(combo, row_combo, -c)
        return vec, combo

    def reduce(self, vec):
        return self._reduce(vec, {})[0]

    def contains(self, vec):
        return not self.reduce(vec)

    def insert(self, vec, tag=None):
        """Add a row; return True iff it was independent of earlier rows."""
        combo = {} if tag is None else {tag: Fraction(1)}
        residual, combo = self._reduce(vec, combo)
        if not residual:
            return False
        if self._sort_key is None:
            pivot = min(residual, key=repr)
        else:
            pivot = min(residual, key=self._sort_key)
        inv = 1 / residual[pivot]
        self._pivots.append((pivot, scaled(residual, inv), scaled(combo, inv)))
        self._pivot_set.add(pivot)
        return True

    def solve(self, vec):
        """Coefficients c_tag with sum c_tag * row_tag == vec, or None."""
        residual, combo = self._reduce(vec, {})
        if residual:
            return None
        return {tag: -c for tag, c in combo.items()}


def rref(rows, ncols):
    """Reduced row echelon form of a dense Fraction matrix.

    Returns (reduced rows, pivot column list).
    """
    m = [list(map(as_fraction, r)) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols):
    """Basis of {x : rows @ x = 0}, one dense vector per free column."""
    reduced, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def mat_inverse(a):
    """Inverse of a square Fraction matrix, or None when singular."""
    n = len(a)
    aug = [list(map(as_fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    reduced, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        return None
    return [row[n:] for row in reduced]


def mat_rank(rows, ncols):
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])
