"""Lax matrices with spectral parameter and the conserved quantities.

Entries are :class:`LaurentPoly` in zeta.  Coefficients may be field
elements or dual numbers, so the same code yields the invariants and their
Jacobian.
"""

from .dual import seed
from .errors import NormalizationDegenerate, SingularP, SupportViolation
from .linalg import Mat3, charpoly3, proportional, rank
from .polys import BivariatePoly, LaurentPoly

__all__ = [
    "lax_L", "lax_P", "lax_image", "zero_curvature_holds", "lax_conjugacy_holds",
    "monodromy_T", "spectral_poly", "support_pattern",
    "invariants_H", "invariants_from_xy", "jacobian_rank_H", "InvariantVector",
]


class InvariantVector(tuple):
    """(H_1, ..., H_{2m+2}) with m = floor(n / 2)."""

    def __str__(self):
        return "(" + ", ".join(str(h) for h in self) + ")"


def _xy(coords):
    if isinstance(coords, tuple) and len(coords) == 2:
        return coords
    return coords.x, coords.y


def _c(v, e=0):
    return LaurentPoly.monomial(v, e)


def lax_L(i, coords):
    """Rows [1/x, -1/x, 0], [1/z, 0, -1/z], [y, 0, 0] with x = x_{i+2}, y = y_{i+2}."""
    xs, ys = _xy(coords)
    n = len(xs)
    x, y = xs[(i + 2) % n], ys[(i + 2) % n]
    one = x * 0 + 1
    ix = one / x
    zero = LaurentPoly()
    return Mat3([
        [_c(ix), _c(-ix), zero],
        [_c(one, -1), zero, _c(-one, -1)],
        [_c(y), zero, zero],
    ])


def lax_P(i, coords):
    """Gauge matrix P_i; zeta enters only through entry (3, 2).

    The middle entry is +(1 - x_{i+1} y_{i+1}).  This sign was fixed by
    comparing against the frame-transition matrices of actual polygons;
    with the opposite sign neither identity below holds.
    """
    xs, ys = _xy(coords)
    n = len(xs)
    x1, y1 = xs[(i + 1) % n], ys[(i + 1) % n]
    x2, y2 = xs[(i + 2) % n], ys[(i + 2) % n]
    x3, y3 = xs[(i + 3) % n], ys[(i + 3) % n]
    w1, w2, w3 = 1 - x1 * y1, 1 - x2 * y2, 1 - x3 * y3
    # det P_i = zeta * y_{i+2} * w1 * w2^2 * w3
    if not (w1 and w2 and w3):
        raise SingularP(f"P_{i} is singular: some 1 - x_j y_j vanishes")
    zero = LaurentPoly()
    return Mat3([
        [_c(w2), zero, _c(-w2)],
        [_c(x1 * y1 * w2), _c(w1), _c(-w2)],
        [zero, _c(y2 * w3, 1), zero],
    ])


def lax_image(coords):
    """f(C) labeled so that w_i is the meet of v_{i-1} v_{i+1} and v_i v_{i+2}.

    This is the labeling in which the zero-curvature equation holds; it is
    map_coords(C) shifted by VERTEX_SHIFT.
    """
    from .pentagram import VERTEX_SHIFT, map_coords
    return map_coords(coords).shift(VERTEX_SHIFT)


def zero_curvature_holds(coords):
    """L_i(f C) P_i(C) is proportional to P_{i+1}(C) L_i(C) for every i."""
    image = lax_image(coords)
    return all(proportional(lax_L(i, image) @ lax_P(i, coords),
                            lax_P(i + 1, coords) @ lax_L(i, coords))
               for i in range(len(_xy(coords)[0])))


def lax_conjugacy_holds(coords):
    """T_0(f C) P_0(C) is proportional to P_0(C) T_0(C)."""
    p0 = lax_P(0, coords)
    return proportional(monodromy_T(lax_image(coords)) @ p0, p0 @ monodromy_T(coords))


def monodromy_T(coords):
    """T_0 = L_{n-1} ... L_1 L_0."""
    xs, _ = _xy(coords)
    t = lax_L(0, coords)
    for i in range(1, len(xs)):
        t = lax_L(i, coords) @ t
    return t


def support_pattern(n):
    m = n // 2
    pat = {(3, n), (2, n), (0, 0)}
    pat |= {(2, n + i - m) for i in range(m)}
    pat |= {(1, m - i) for i in range(m + 1)}
    return pat


def spectral_poly(coords):
    """Normalized characteristic polynomial of the monodromy, times zeta^n.

    The weighted rescaling lam -> l lam with l chosen so that the lam^2 zeta^n
    coefficient is -1; the lam^3 zeta^n coefficient is then 1.
    """
    xs, _ = _xy(coords)
    n = len(xs)
    cp = charpoly3(monodromy_T(coords)).shift(0, n)
    anchor = cp.coeff(2, n)
    if not anchor:
        raise NormalizationDegenerate("the lam^2 zeta^n coefficient vanishes")
    l = -1 / anchor
    scale = {3: None, 2: l, 1: l * l, 0: l * l * l}
    out = {}
    for (a, e), c in cp.terms.items():
        out[(a, e)] = c if a == 3 else c * scale[a]
    q = BivariatePoly(out)
    extra = q.support() - support_pattern(n)
    if extra:
        raise SupportViolation(f"unexpected monomials {sorted(extra)}")
    return q


def _read_H(q, n):
    m = n // 2
    zero = q.coeff(3, n) * 0
    hs = [q.coeff(2, n + i - m, zero) for i in range(m)]
    hs += [q.coeff(1, m - i, zero) for i in range(m + 1)]
    hs.append(-q.coeff(0, 0, zero))
    return InvariantVector(hs)


def invariants_from_xy(xs, ys):
    return _read_H(spectral_poly((tuple(xs), tuple(ys))), len(xs))


def invariants_H(coords):
    """H_1 .. H_m from lam^2 terms, H_{m+1} .. H_{2m+1} from lam terms, H_{2m+2} = -constant."""
    xs, ys = _xy(coords)
    return invariants_from_xy(xs, ys)


def jacobian_rank_H(coords):
    """Exact rank of dH/d(x, y) at a rational point, via dual numbers."""
    xs, ys = _xy(coords)
    field = xs[0].field
    if field.characteristic != 0:
        raise ValueError("jacobian_rank_H needs a characteristic-0 point")
    n = len(xs)
    duals = seed(list(xs) + list(ys))
    hs = invariants_from_xy(duals[:n], duals[n:])
    zero = field.zero
    rows = []
    for h in hs:
        if hasattr(h, "partials"):
            rows.append([p if p else zero for p in h.partials])
        else:
            rows.append([zero] * (2 * n))
    rows = [[p if not isinstance(p, int) else field(p) for p in r] for r in rows]
    return rank(rows, len(rows), 2 * n)
