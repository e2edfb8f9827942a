"""
Twisted polygons and their corner coordinates
=============================================

A twisted n-gon is n points in the plane plus a monodromy M with
v_{i+n} = M v_i.  Its 2n corner coordinates are cross-ratios; they are
computed here two ways (geometrically, and through the difference operator
that annihilates the vertices), and the polygon is rebuilt from them.
"""

from pentagram import (
    GF, QQ, Mat3, TwistedPolygon, corner_coords_from_operator, corner_coords_from_vertices,
    cross_ratio4, delta, polygon_from_coords, random_coords, validate,
)
from pentagram.projective import ProjLine, ProjPoint

# the cross-ratio convention: [v1, v2, v3, v4] = (v1-v2)(v3-v4) / ((v1-v3)(v2-v4))
pts = [ProjPoint(QQ(x), QQ(0), QQ(1)) for x in (0, 1, 3, 4)]
print("cross-ratio of 0,1,3,4:", cross_ratio4(*pts, on=ProjLine(QQ(0), QQ(1), QQ(0))))

# a projectively regular heptagon lives over F_29, where 7 has order 7
F = GF(29)
w = F(7)
hept = TwistedPolygon([(F.one, w ** k, w ** (2 * k)) for k in range(7)], Mat3.identity(F.one, F.zero))
print("regular heptagon valid:", bool(validate(hept)))
c = corner_coords_from_vertices(hept)
print(c)                                      # all x equal, all y equal

# the difference operator: a_i v_i + b_i v_{i+1} + c_i v_{i+2} + d_i v_{i+3} = 0
op = delta(hept)
print("operator column 0:", op.column(0))
print("same corners via the operator:", corner_coords_from_operator(op) == c)

# random coordinates -> polygon -> coordinates is the identity
for n in (5, 6, 7, 8):
    c = random_coords(n, QQ, seed=n)
    p = polygon_from_coords(c)
    print(n, "roundtrip exact:", corner_coords_from_vertices(p) == c)

print(polygon_from_coords(random_coords(5, GF(13), 1)).to_text())
