"""The pentagram map: coordinate formulas, diagonal intersections, refactorization.

All three routes take 0-based cyclic indices.  The vertex route labels the
new vertex w_i as the meet of the diagonals v_{i-1} v_{i+1} and v_i v_{i+2};
with that labeling its corner invariants are the coordinate-route output
shifted by :data:`VERTEX_SHIFT`.
"""

import enum
import itertools
from dataclasses import dataclass, field as dc_field

from .errors import (
    CoincidentLines, CoincidentPoints, CoordinateDegenerate, DegenerateImage,
    IndeterminatePoint, LeavesModuli, NoNondegenerateKernelVector,
)
from .linalg import cross, nullspace
from .polygon import (
    CornerCoords, DifferenceOperator, TwistedPolygon, corner_coords_from_operator,
    corner_coords_from_vertices, delta, validate,
)

__all__ = [
    "map_coords", "map_vertices", "map_vertices_coords", "map_refactor",
    "scaling_act", "orbit", "OrbitRecord", "OrbitStatus", "VERTEX_SHIFT",
]

# corners(map_vertices(P)) == map_coords(corners(P)).shift(VERTEX_SHIFT);
# found by trying every cyclic shift over Q at n = 5 (see tests)
VERTEX_SHIFT = -1


def _defect(coords):
    """w_j = 1 - x_j y_j, raising if any vanishes (each is some denominator)."""
    ws = [1 - x * y for x, y in zip(coords.x, coords.y)]
    for j, w in enumerate(ws):
        if not w:
            raise IndeterminatePoint(f"x_{j} y_{j} = 1")
    return ws


def _coords_or_leave(xs, ys):
    try:
        return CornerCoords(xs, ys)
    except CoordinateDegenerate as exc:
        raise LeavesModuli(str(exc)) from exc


def map_coords(coords):
    """x'_i = x_{i+1} w_i / w_{i+2},  y'_i = y_{i+2} w_{i+3} / w_{i+1}."""
    n = coords.n
    x, y = coords.x, coords.y
    w = _defect(coords)
    inv = [1 / v for v in w]
    xs = [x[(i + 1) % n] * w[i] * inv[(i + 2) % n] for i in range(n)]
    ys = [y[(i + 2) % n] * w[(i + 3) % n] * inv[(i + 1) % n] for i in range(n)]
    return _coords_or_leave(xs, ys)


def map_vertices(poly):
    """Intersect consecutive short diagonals; the monodromy is kept."""
    n = poly.n
    vs = {k: poly.vertex(k) for k in range(-1, n + 2)}
    new = []
    for i in range(n):
        d1 = cross(vs[i - 1], vs[i + 1])
        d2 = cross(vs[i], vs[i + 2])
        if not any(d1) or not any(d2):
            raise DegenerateImage(f"diagonal through v_{i} is undefined")
        w = cross(d1, d2)
        if not any(w):
            raise DegenerateImage(f"diagonals at {i} coincide")
        new.append(w)
    image = TwistedPolygon(new, poly.monodromy)
    check = validate(image)
    if not check:
        raise DegenerateImage(f"image polygon is degenerate: {check}")
    return image


def map_vertices_coords(poly):
    """Corner invariants of map_vertices(P), relabeled to match map_coords."""
    try:
        image = map_vertices(poly)
    except (CoincidentPoints, CoincidentLines) as exc:
        raise DegenerateImage(str(exc)) from exc
    return corner_coords_from_vertices(image).shift(-VERTEX_SHIFT)


def _refactor_system(op):
    """3n x 4n matrix; unknowns ordered (a~_i, b~_i, c~_i, d~_i) for i = 0..n-1."""
    n = op.n
    a, b, c, d = op.a, op.b, op.c, op.d
    zero = a[0] * 0
    rows = []
    for i in range(n):
        base = 4 * i
        r1 = [zero] * (4 * n)
        r1[base] = b[i]
        r1[base + 1] = -a[(i + 1) % n]
        r2 = [zero] * (4 * n)
        r2[base] = d[i]
        r2[base + 1] = -c[(i + 1) % n]
        r2[base + 2] = b[(i + 2) % n]
        r2[base + 3] = -a[(i + 3) % n]
        r3 = [zero] * (4 * n)
        r3[base + 2] = d[(i + 2) % n]
        r3[base + 3] = -c[(i + 3) % n]
        rows += [r1, r2, r3]
    return rows


def _pick_kernel_vector(basis, max_tries=20000):
    for v in basis:
        if all(v):
            return v
    k = len(basis)
    for coeffs in itertools.islice(itertools.product((1, 2, 3), repeat=k), max_tries):
        v = [sum((c * b[j] for c, b in zip(coeffs, basis)), basis[0][j] * 0)
             for j in range(len(basis[0]))]
        if all(v):
            return v
    raise NoNondegenerateKernelVector("no kernel combination with all entries nonzero")


def map_refactor(poly):
    """Image corner invariants through the operator refactorization.

    Solves for the new operator D~ from the bilinear relations linking it to
    Delta(P), then reads its corner invariants.
    """
    op = delta(poly)
    start = corner_coords_from_operator(op)
    _defect(start)
    n = op.n
    basis = nullspace(_refactor_system(op), 3 * n, 4 * n)
    if not basis:
        raise NoNondegenerateKernelVector("refactorization system has a trivial kernel")
    v = _pick_kernel_vector(basis)
    new = DifferenceOperator(v[0::4], v[1::4], v[2::4], v[3::4])
    try:
        return corner_coords_from_operator(new)
    except CoordinateDegenerate as exc:
        raise LeavesModuli(str(exc)) from exc


def scaling_act(coords, t):
    """t . (x, y) = (x / t, t y)."""
    if not t:
        raise ValueError("scaling parameter must be nonzero")
    s = 1 / t
    return _coords_or_leave([v * s for v in coords.x], [v * t for v in coords.y])


class OrbitStatus(str, enum.Enum):
    PERIODIC = "Periodic"
    DEGENERATE = "Degenerate"
    UNDECIDED = "Undecided"


@dataclass
class OrbitRecord:
    start: CornerCoords
    status: OrbitStatus
    preperiod: int = 0
    period: int = 0
    degenerate_step: int = None
    invariant_vector: tuple = None
    points: list = dc_field(default=None, repr=False)

    def to_dict(self):
        d = {"start": str(self.start), "status": self.status.value,
             "preperiod": self.preperiod, "period": self.period}
        if self.status is OrbitStatus.DEGENERATE:
            d["degenerate_step"] = self.degenerate_step
        if self.invariant_vector is not None:
            d["invariant_vector"] = [str(h) for h in self.invariant_vector]
        return d


def orbit(coords, max_steps, invariants=True, keep_points=False):
    """Iterate map_coords, stopping at the first recurrence or undefined step.

    ``degenerate_step`` is the index t with f^t(C) defined but f^{t+1}(C)
    not.  ``points`` (when kept) lists f^0 .. f^{last}.
    """
    inv = None
    if invariants:
        from .lax import invariants_H
        try:
            inv = invariants_H(coords)
        except Exception:  # noqa: BLE001 - any failure just means "no vector"
            inv = None
    seen = {coords: 0}
    pts = [coords]
    cur = coords
    for step in range(max_steps):
        try:
            cur = map_coords(cur)
        except (IndeterminatePoint, LeavesModuli):
            return OrbitRecord(coords, OrbitStatus.DEGENERATE, degenerate_step=step,
                               invariant_vector=inv, points=pts if keep_points else None)
        if cur in seen:
            mu = seen[cur]
            return OrbitRecord(coords, OrbitStatus.PERIODIC, preperiod=mu, period=step + 1 - mu,
                               invariant_vector=inv, points=pts if keep_points else None)
        seen[cur] = step + 1
        pts.append(cur)
    return OrbitRecord(coords, OrbitStatus.UNDECIDED, invariant_vector=inv,
                       points=pts if keep_points else None)
