"""The projective plane over an exact field.

Points and lines are homogeneous triples compared up to scale through
2x2 minors, so nothing is ever normalised and no division happens outside
the cross-ratio itself.
"""

import re

from .errors import CoincidentLines, CoincidentPoints, DegenerateCrossRatio, NotOnLine
from .fields import parse_element
from .linalg import cross, det3, dot

__all__ = [
    "ProjPoint", "ProjLine", "join", "meet", "collinear", "cross_ratio4",
    "line_basis", "parse_point",
]


def _same_up_to_scale(u, v):
    return not any(cross(u, v))


class _Triple:
    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError("homogeneous coordinates need 3 entries")
        if not any(coords):
            raise ValueError("homogeneous coordinates cannot all vanish")
        self.coords = tuple(coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return 3

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return _same_up_to_scale(self.coords, other.coords)

    def __hash__(self):
        # scale-invariant hash: normalise a copy by the first nonzero entry
        k = next(i for i, c in enumerate(self.coords) if c)
        inv = 1 / self.coords[k]
        return hash(tuple(c * inv for c in self.coords))

    def transform(self, m):
        return type(self)(m @ self.coords)

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"{type(self).__name__}{self}"


class ProjPoint(_Triple):
    __slots__ = ()

    def on(self, line):
        return not dot(self.coords, line.coords)


class ProjLine(_Triple):
    __slots__ = ()

    def contains(self, point):
        return not dot(self.coords, point.coords)

    def transform(self, m):
        # lines transform by the inverse transpose; the adjugate is enough
        return ProjLine(m.adjugate().transpose() @ self.coords)


def join(p, q):
    """The line through two distinct points."""
    c = cross(p.coords, q.coords)
    if not any(c):
        raise CoincidentPoints(f"{p} and {q} coincide")
    return ProjLine(c)


def meet(l, m):
    """The intersection point of two distinct lines."""
    c = cross(l.coords, m.coords)
    if not any(c):
        raise CoincidentLines(f"{l} and {m} coincide")
    return ProjPoint(c)


def collinear(p, q, r):
    return not det3(p.coords, q.coords, r.coords)


def line_basis(line):
    """Two independent points spanning ``line`` (a fixed, chart-free choice)."""
    a, b, c = line.coords
    # the kernel of (a, b, c): pick the two of (b,-a,0), (c,0,-a), (0,c,-b) that are independent
    cands = [(b, -a, a * 0), (c, a * 0, -a), (a * 0, c, -b)]
    cands = [v for v in cands if any(v)]
    u = cands[0]
    w = next(v for v in cands[1:] if any(cross(u, v)))
    return ProjPoint(u), ProjPoint(w)


def cross_ratio4(p1, p2, p3, p4, on, basis=None):
    """Cross-ratio [p1,p2,p3,p4] = (p1-p2)(p3-p4) / ((p1-p3)(p2-p4)).

    Each p_i = alpha_i u + beta_i w in a basis (u, w) of the line ``on``;
    the differences become 2x2 brackets alpha_i beta_j - alpha_j beta_i.
    The bracket is read off ``p_i x p_j = [p_i p_j] (u x w)`` on one
    component where ``u x w`` does not vanish.
    """
    pts = (p1, p2, p3, p4)
    for p in pts:
        if not on.contains(p):
            raise NotOnLine(f"{p} is not on {on}")
    u, w = basis if basis is not None else line_basis(on)
    uw = cross(u.coords, w.coords)
    if not any(uw):
        raise ValueError("basis points coincide")
    k = next(i for i, c in enumerate(uw) if c)

    def br(a, b):
        return cross(a.coords, b.coords)[k]

    b13, b24 = br(p1, p3), br(p2, p4)
    if not b13 or not b24:
        raise DegenerateCrossRatio("p1 = p3 or p2 = p4")
    return (br(p1, p2) * br(p3, p4)) / (b13 * b24)


def parse_point(text, cls=ProjPoint):
    """Parse "[a:b:c]" with field-element syntax in each slot."""
    m = re.fullmatch(r"\s*\[(.*)\]\s*", text)
    if not m:
        raise ValueError(f"not a point: {text!r}")
    parts = _split_top(m.group(1), ":")
    if len(parts) != 3:
        raise ValueError(f"need three coordinates: {text!r}")
    return cls(*[parse_element(s) for s in parts])


def _split_top(s, sep):
    """Split on ``sep`` outside brackets/parentheses."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out

