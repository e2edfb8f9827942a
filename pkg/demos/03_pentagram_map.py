"""
The pentagram map three ways
============================

The map sends a polygon to the polygon cut out by its short diagonals.  It
is computed from the corner-coordinate formulas, by intersecting
diagonals, and by refactoring the difference operator; all three agree
exactly once the vertex route is relabeled by VERTEX_SHIFT.
"""

from pentagram import (
    GF, QQ, VERTEX_SHIFT, CornerCoords, corner_coords_from_vertices, map_coords, map_refactor,
    map_vertices, orbit, polygon_from_coords, random_coords, scaling_act,
)

c = random_coords(6, QQ, seed=1, in_domain=True)
p = polygon_from_coords(c)
print(f"coordinate route:\n{map_coords(c)}")
geo = corner_coords_from_vertices(map_vertices(p))
print("vertex route agrees after shift", VERTEX_SHIFT, ":", geo == map_coords(c).shift(VERTEX_SHIFT))
print("refactorization agrees:", map_refactor(p) == map_coords(c))

# how the shift was found: exactly one relabeling works
print("matching shifts:", [k for k in range(6) if geo == map_coords(c).shift(k)])

# the map commutes with the scaling (x, y) -> (x / t, t y)
t = QQ.parse("3/2")
print("scaling commutes:", map_coords(scaling_act(c, t)) == scaling_act(map_coords(c), t))

# constant coordinates are fixed points
fixed = CornerCoords([QQ(3)] * 5, [QQ.parse("-2/5")] * 5)
print("fixed:", map_coords(fixed) == fixed)

# orbits over a finite field end in a cycle or hit an undefined step; over F_11
# the image usually leaves the moduli space at once (some x_i or y_i becomes 0 or 1),
# so a hand-picked alternating point shows the periodic case
for s in range(5):
    rec = orbit(random_coords(5, GF(11), s, in_domain=True), 10 ** 6)
    print(f"seed {s}: {rec.status.value}, degenerate step {rec.degenerate_step}, period {rec.period}")
print(orbit(CornerCoords([GF(11)(3), GF(11)(5)] * 3, [GF(11)(5), GF(11)(7)] * 3), 100).to_dict())
