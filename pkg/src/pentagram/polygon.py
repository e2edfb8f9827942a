"""Twisted polygons, corner invariants and difference operators.

Indexing is 0-based and cyclic.  Formulas written for 1-based indices
carry over verbatim because every one of them is shift-equivariant; the
only place a base point matters is reconstruction, where v_0, v_1, v_2 are
pinned to the standard basis.

=====================  ==========================================
quantity               0-based convention used here
=====================  ==========================================
vertices               v_0 .. v_{n-1}, v_{i+n} = M v_i
Delta(P) column i      relation among v_i, v_{i+1}, v_{i+2}, v_{i+3}
x_i, y_i               corner invariants at vertex v_i
normal-form operator   b_i = c_i = 1, a_i = x_{i+1}, d_i = y_{i+2}
=====================  ==========================================
"""

import random
import re
from dataclasses import dataclass

from .errors import (
    CoincidentLines, CoincidentPoints, CoordinateDegenerate, DegenerateCrossRatio,
    DegeneratePolygon, FieldTooSmall, ReconstructionDegenerate,
)
from .fields import parse_field
from .linalg import Mat3, cross, det3
from .projective import ProjLine, ProjPoint, _split_top, cross_ratio4

__all__ = [
    "CornerCoords", "TwistedPolygon", "DifferenceOperator", "PolygonCheck",
    "validate", "delta", "corner_coords_from_operator",
    "corner_coords_from_vertices", "polygon_from_coords", "random_coords",
    "random_polygon", "normal_form_operator",
]


@dataclass(frozen=True)
class CornerCoords:
    """A point of the moduli space: 2n coordinates, none equal to 0 or 1."""

    x: tuple
    y: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have the same length")
        for name, seq in (("x", self.x), ("y", self.y)):
            for i, v in enumerate(seq):
                if v == 0 or v == 1:
                    raise CoordinateDegenerate(f"{name}_{i} = {v} is not allowed")

    @property
    def n(self):
        return len(self.x)

    @property
    def field(self):
        return self.x[0].field

    def values(self):
        return self.x + self.y

    def shift(self, k):
        """Relabel indices: the result has x_i = self.x_{i+k}."""
        n = self.n
        return CornerCoords([self.x[(i + k) % n] for i in range(n)],
                            [self.y[(i + k) % n] for i in range(n)])

    def __str__(self):
        return ("x: " + ",".join(str(v) for v in self.x) + "\n"
                + "y: " + ",".join(str(v) for v in self.y))

    @classmethod
    def parse(cls, text, field=None):
        xs = ys = None
        for line in text.strip().splitlines():
            m = re.fullmatch(r"\s*([xy])\s*:(.*)", line)
            if not m:
                continue
            parts = [s.strip() for s in _split_top(m.group(2), ",")]
            if field is not None:
                vals = [field.parse(s) if hasattr(field, "parse") else field(s) for s in parts]
            else:
                from .fields import parse_element
                vals = [parse_element(s) for s in parts]
            if m.group(1) == "x":
                xs = vals
            else:
                ys = vals
        if xs is None or ys is None:
            raise ValueError("corner coordinates need an 'x:' and a 'y:' line")
        return cls(xs, ys)


@dataclass(frozen=True)
class DifferenceOperator:
    """a + b S + c S^2 + d S^3 with n-periodic coefficient sequences."""

    a: tuple
    b: tuple
    c: tuple
    d: tuple

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def n(self):
        return len(self.a)

    def column(self, i):
        i %= self.n
        return self.a[i], self.b[i], self.c[i], self.d[i]

    def is_nondegenerate(self):
        return all(v for s in (self.a, self.b, self.c, self.d) for v in s)


class TwistedPolygon:
    """n vertex representatives and a monodromy; v_{i+n} = M v_i."""

    __slots__ = ("vertices", "monodromy", "_minv")

    def __init__(self, vertices, monodromy):
        vs = tuple(tuple(v.coords) if isinstance(v, ProjPoint) else tuple(v) for v in vertices)
        if len(vs) < 4:
            raise ValueError("a twisted polygon needs n >= 4 vertices")
        self.vertices = vs
        self.monodromy = monodromy if isinstance(monodromy, Mat3) else Mat3(monodromy)
        self._minv = None

    @property
    def n(self):
        return len(self.vertices)

    @property
    def field(self):
        for v in self.vertices:
            for c in v:
                if hasattr(c, "field"):
                    return c.field
        raise ValueError("polygon has no field-typed coordinates")

    def vertex(self, i):
        """Homogeneous vector for v_i, any integer i (extends through M)."""
        q, r = divmod(i, self.n)
        v = self.vertices[r]
        if q > 0:
            for _ in range(q):
                v = self.monodromy @ v
        elif q < 0:
            if self._minv is None:
                self._minv = self.monodromy.adjugate()
            for _ in range(-q):
                v = self._minv @ v
        return v

    def point(self, i):
        return ProjPoint(self.vertex(i))

    def transform(self, a):
        """Apply A: v_i -> A v_i, M -> A M A^{-1} (up to scale)."""
        adj = a.adjugate()
        return TwistedPolygon([a @ v for v in self.vertices], a @ self.monodromy @ adj)

    def __eq__(self, other):
        """Projective equality of the vertex data and the monodromy class."""
        from .linalg import proportional
        if not isinstance(other, TwistedPolygon) or other.n != self.n:
            return False
        return (all(not any(cross(u, v)) for u, v in zip(self.vertices, other.vertices))
                and proportional(self.monodromy, other.monodromy))

    __hash__ = None

    def to_text(self):
        lines = [f"n={self.n} field={self.field.describe()}"]
        lines += ["[" + ":".join(str(c) for c in v) + "]" for v in self.vertices]
        lines += ["[" + ":".join(str(c) for c in r) + "]" for r in self.monodromy.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        rows = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        m = re.fullmatch(r"n\s*=\s*(\d+)\s+field\s*=\s*(\S+)", rows[0])
        if not m:
            raise ValueError("polygon header must read 'n=<n> field=<desc>'")
        n = int(m.group(1))
        field = parse_field(m.group(2))
        if len(rows) != 1 + n + 3:
            raise ValueError(f"expected {n} vertex lines and 3 monodromy rows")

        def row(s):
            inner = re.fullmatch(r"\s*\[(.*)\]\s*", s).group(1)
            return [field.parse(t) for t in _split_top(inner, ":")]

        verts = [row(s) for s in rows[1:1 + n]]
        mono = Mat3([row(s) for s in rows[1 + n:]])
        return cls(verts, mono)

    def __repr__(self):
        return f"TwistedPolygon(n={self.n})"


# ---------------------------------------------------------------------------

# the ten triples among five consecutive points, minus the allowed (0, 2, 4)
_WINDOW_TRIPLES = [(a, b, c) for a in range(5) for b in range(a + 1, 5) for c in range(b + 1, 5)
                   if (a, b, c) != (0, 2, 4)]


@dataclass(frozen=True)
class PolygonCheck:
    ok: bool
    window: int = None
    triple: tuple = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate(p):
    """Check the nondegeneracy condition on every cyclic 5-window.

    Windows start at i = 0 .. n-1 and extend past v_{n-1} through the
    monodromy.  Returns a truthy/falsy :class:`PolygonCheck` naming the
    first violated window.
    """
    m = p.monodromy
    if not m.det():
        return PolygonCheck(False, reason="monodromy is singular")
    vs = [p.vertex(i) for i in range(p.n + 4)]
    for i, v in enumerate(vs):
        if not any(v):
            return PolygonCheck(False, window=i % p.n, reason="zero vertex")
    for i in range(p.n):
        win = vs[i:i + 5]
        for a, b, c in _WINDOW_TRIPLES:
            if not det3(win[a], win[b], win[c]):
                return PolygonCheck(False, window=i, triple=(i + a, i + b, i + c),
                                    reason="three collinear points")
    return PolygonCheck(True)


def delta(p):
    """The difference operator annihilating the vertex representatives.

    a_i v_i + b_i v_{i+1} + c_i v_{i+2} + d_i v_{i+3} = 0 with the four
    coefficients given by the complementary 3x3 determinants.
    """
    n = p.n
    vs = [p.vertex(i) for i in range(n + 3)]
    a, b, c, d = [], [], [], []
    for i in range(n):
        v0, v1, v2, v3 = vs[i:i + 4]
        a.append(det3(v1, v2, v3))
        b.append(-det3(v0, v2, v3))
        c.append(det3(v0, v1, v3))
        d.append(-det3(v0, v1, v2))
    op = DifferenceOperator(a, b, c, d)
    if not op.is_nondegenerate():
        raise DegeneratePolygon("a coefficient of Delta(P) vanishes")
    return op


def corner_coords_from_operator(op):
    """x_i = a_{i-1} c_{i-2} / (b_{i-1} b_{i-2}),  y_i = d_{i-2} b_{i-1} / (c_{i-2} c_{i-1})."""
    n = op.n
    a, b, c, d = op.a, op.b, op.c, op.d
    xs, ys = [], []
    for i in range(n):
        i1, i2 = (i - 1) % n, (i - 2) % n
        xs.append(a[i1] * c[i2] / (b[i1] * b[i2]))
        ys.append(d[i2] * b[i1] / (c[i2] * c[i1]))
    return CornerCoords(xs, ys)


def _line(u, v):
    c = cross(u, v)
    if not any(c):
        raise CoincidentPoints("coincident vertices")
    return c


def _meet(l1, l2):
    c = cross(l1, l2)
    if not any(c):
        raise CoincidentLines("coincident lines")
    return c


def corner_coords_from_vertices(p):
    """Corner invariants computed as cross-ratios of points on lines.

    x_i lives on the line v_{i-2} v_{i-1}, y_i on the line v_{i+1} v_{i+2}.
    """
    n = p.n
    vs = {k: p.vertex(k) for k in range(-2, n + 2)}
    xs, ys = [], []
    try:
        for i in range(n):
            vm2, vm1, v0, v1, v2 = (vs[i - 2], vs[i - 1], vs[i], vs[i + 1], vs[i + 2])
            left = _line(vm2, vm1)
            right = _line(v1, v2)
            q_left = _meet(_line(v0, v1), left)      # v_i v_{i+1} meets v_{i-2} v_{i-1}
            q_corner = _meet(right, left)            # v_{i+1} v_{i+2} meets v_{i-2} v_{i-1}
            q_right = _meet(_line(vm1, v0), right)   # v_{i-1} v_i meets v_{i+1} v_{i+2}
            xs.append(cross_ratio4(ProjPoint(vm2), ProjPoint(vm1), ProjPoint(q_left),
                                   ProjPoint(q_corner), ProjLine(left)))
            ys.append(cross_ratio4(ProjPoint(q_corner), ProjPoint(q_right), ProjPoint(v1),
                                   ProjPoint(v2), ProjLine(right)))
    except (CoincidentPoints, CoincidentLines) as exc:
        raise DegenerateCrossRatio(str(exc)) from exc
    return CornerCoords(xs, ys)


def normal_form_operator(coords):
    """The lift with b_i = c_i = 1, a_i = x_{i+1}, d_i = y_{i+2}."""
    n = coords.n
    one = coords.x[0].field.one
    return DifferenceOperator([coords.x[(i + 1) % n] for i in range(n)], [one] * n, [one] * n,
                              [coords.y[(i + 2) % n] for i in range(n)])


def polygon_from_coords(coords):
    """Rebuild a twisted polygon from its corner invariants.

    v_0, v_1, v_2 are the standard basis and v_{i+3} is solved from
    a_i v_i + b_i v_{i+1} + c_i v_{i+2} + d_i v_{i+3} = 0 using the normal
    form operator; M has columns v_n, v_{n+1}, v_{n+2}.
    """
    op = normal_form_operator(coords)
    field = coords.field
    z, o = field.zero, field.one
    vs = [(o, z, z), (z, o, z), (z, z, o)]
    n = coords.n
    for i in range(n):
        a, b, c, d = op.column(i)
        s = -1 / d
        v = tuple((a * vs[i][k] + b * vs[i + 1][k] + c * vs[i + 2][k]) * s for k in range(3))
        if not any(v):
            raise ReconstructionDegenerate(f"vertex {i + 3} vanishes")
        vs.append(v)
    mono = Mat3.from_columns(vs[n], vs[n + 1], vs[n + 2])
    poly = TwistedPolygon(vs[:n], mono)
    check = validate(poly)
    if not check:
        raise ReconstructionDegenerate(f"reconstructed polygon is degenerate: {check}")
    return poly


def random_coords(n, field, seed, in_domain=False):
    """Seeded random point of the moduli space; every value avoids {0, 1}.

    Each coordinate is resampled until legal.  With ``in_domain=True`` the
    pair (x_i, y_i) is also redrawn while x_i y_i = 1, so the map is defined
    at the result (its image may still leave the moduli space).
    """
    if field.order is not None and field.order <= 2:
        raise FieldTooSmall("need a field with more than two elements")
    if in_domain and field.order == 3:
        raise FieldTooSmall("over F_3 every point has x_i y_i = 1")
    rng = random.Random(seed) if not isinstance(seed, random.Random) else seed

    def draw():
        while True:
            v = field.random_element(rng)
            if v != 0 and v != 1:
                return v

    if not in_domain:
        vals = [draw() for _ in range(2 * n)]
        return CornerCoords(vals[:n], vals[n:])
    xs, ys = [], []
    for _ in range(n):
        while True:
            x, y = draw(), draw()
            if x * y != 1:
                break
        xs.append(x)
        ys.append(y)
    return CornerCoords(xs, ys)


def random_polygon(n, field, seed, max_tries=1000):
    """A seeded random valid twisted polygon with generic vertices and monodromy.

    Built directly from random vectors, so it does not go through the
    reconstruction code.
    """
    rng = random.Random(seed) if not isinstance(seed, random.Random) else seed
    for _ in range(max_tries):
        verts = [tuple(field.random_element(rng) for _ in range(3)) for _ in range(n)]
        mono = Mat3([[field.random_element(rng) for _ in range(3)] for _ in range(3)])
        poly = TwistedPolygon(verts, mono)
        if validate(poly):
            try:
                corner_coords_from_vertices(poly)
            except (CoordinateDegenerate, DegenerateCrossRatio):
                continue
            return poly
    raise DegeneratePolygon("could not sample a valid polygon")
