"""3x3 matrices over exact rings, characteristic polynomials, kernels."""

from .polys import BivariatePoly, LaurentPoly

__all__ = [
    "Mat3", "cross", "dot", "det3", "charpoly3", "nullspace", "rank",
    "proportional",
]


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(u, v, w):
    """Determinant of the matrix with columns u, v, w."""
    return dot(u, cross(v, w))


class Mat3:
    """Immutable 3x3 matrix; entries any ring elements."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs exactly 3 rows of 3 entries")
        self.rows = rows

    @classmethod
    def from_columns(cls, c0, c1, c2):
        return cls(zip(c0, c1, c2))

    @classmethod
    def identity(cls, one=1, zero=0):
        return cls([[one if i == j else zero for j in range(3)] for i in range(3)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def entries(self):
        return [c for r in self.rows for c in r]

    def __matmul__(self, other):
        if isinstance(other, Mat3):
            cols = [other.column(j) for j in range(3)]
            return Mat3([[_dot_sparse(r, c) for c in cols] for r in self.rows])
        # vector
        return tuple(_dot_sparse(r, other) for r in self.rows)

    def __mul__(self, scalar):
        return Mat3([[c * scalar for c in r] for r in self.rows])

    __rmul__ = __mul__

    def __add__(self, other):
        return Mat3([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat3([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat3([[-c for c in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Mat3) and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.rows)

    def transpose(self):
        return Mat3(zip(*self.rows))

    def trace(self):
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def det(self):
        return det3(self.column(0), self.column(1), self.column(2))

    def principal_minor_sum(self):
        a = self.rows
        return (a[0][0] * a[1][1] - a[0][1] * a[1][0]
                + a[0][0] * a[2][2] - a[0][2] * a[2][0]
                + a[1][1] * a[2][2] - a[1][2] * a[2][1])

    def adjugate(self):
        """adj(A) with A @ adj(A) = det(A) * Id."""
        c0, c1, c2 = self.column(0), self.column(1), self.column(2)
        # rows of the adjugate are the cross products of column pairs
        return Mat3([cross(c1, c2), cross(c2, c0), cross(c0, c1)])

    def map(self, fn):
        return Mat3([[fn(c) for c in r] for r in self.rows])

    def __repr__(self):
        return "Mat3(" + repr([list(r) for r in self.rows]) + ")"


def _dot_sparse(r, c):
    total = None
    for a, b in zip(r, c):
        if not a or not b:
            continue
        t = a * b
        total = t if total is None else total + t
    if total is None:
        # a zero of the inputs' ring
        return r[0] * c[0] * 0
    return total


def _as_laurent(c):
    return c if isinstance(c, LaurentPoly) else LaurentPoly.monomial(c, 0)


def charpoly3(m):
    """det(lam*Id - M) as a polynomial in (lam, z).

    ``M`` has Laurent-polynomial (or scalar) entries in z.  Uses
    lam^3 - tr(M) lam^2 + (sum of principal 2-minors) lam - det(M).
    """
    lm = m.map(_as_laurent)
    g1 = lm.trace()
    g2 = lm.principal_minor_sum()
    g3 = lm.det()
    out = {}
    one = _unit_like(lm)
    out[(3, 0)] = one
    for e, c in g1.terms.items():
        out[(2, e)] = -c
    for e, c in g2.terms.items():
        out[(1, e)] = c
    for e, c in g3.terms.items():
        out[(0, e)] = -c
    return BivariatePoly(out)


def _unit_like(m):
    for c in m.entries():
        for v in c.terms.values():
            return v * 0 + 1
    return 1


def nullspace(a, rows=None, cols=None):
    """Exact basis of the right kernel of ``a`` (list of row lists).

    Gauss-Jordan elimination that pivots on the first nonzero entry in
    column order, so the basis is reproducible.  Rows are kept sparse.
    """
    basis, _ = _rref_kernel(a, rows, cols)
    return basis


def rank(a, rows=None, cols=None):
    _, pivots = _rref_kernel(a, rows, cols)
    return len(pivots)


def _rref_kernel(a, rows, cols):
    rows = len(a) if rows is None else rows
    cols = (len(a[0]) if a else 0) if cols is None else cols
    work = [{j: v for j, v in enumerate(r) if v} for r in a[:rows]]
    one = None
    for r in work:
        for v in r.values():
            one = v * 0 + 1
            break
        if one is not None:
            break
    pivots = []  # (col, row dict)
    remaining = work
    for col in range(cols):
        idx = next((i for i, r in enumerate(remaining) if col in r), None)
        if idx is None:
            continue
        prow = remaining.pop(idx)
        inv = 1 / prow[col]
        prow = {j: v * inv for j, v in prow.items()}
        # eliminate col from everything else, including earlier pivot rows
        for r in remaining:
            _eliminate(r, prow, col)
        for _, r in pivots:
            _eliminate(r, prow, col)
        pivots.append((col, prow))
    pivot_cols = {c for c, _ in pivots}
    basis = []
    if one is None:
        one = 1
    zero = one - one
    for f in range(cols):
        if f in pivot_cols:
            continue
        vec = [zero] * cols
        vec[f] = one
        for c, r in pivots:
            if f in r:
                vec[c] = -r[f]
        basis.append(vec)
    return basis, [c for c, _ in pivots]


def _eliminate(r, prow, col):
    f = r.get(col)
    if not f:
        return
    for j, v in prow.items():
        nv = r.get(j, 0) - f * v if j in r else -(f * v)
        if nv:
            r[j] = nv
        else:
            r.pop(j, None)


def proportional(a, b):
    """True iff the entry vectors of ``a`` and ``b`` are nonzero multiples.

    Decided without division: all 2x2 minors a_i b_j - a_j b_i vanish.
    Works over any integral domain (fields, Laurent rings).
    """
    ea = a.entries() if isinstance(a, Mat3) else list(a)
    eb = b.entries() if isinstance(b, Mat3) else list(b)
    k = next((i for i, x in enumerate(ea) if x), None)
    if k is None or not any(eb):
        return False
    ak, bk = ea[k], eb[k]
    return all(not (ak * y - bk * x) for x, y in zip(ea, eb))
