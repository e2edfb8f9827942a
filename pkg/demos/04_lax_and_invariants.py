"""
Lax matrices and the conserved quantities
=========================================

Each corner carries a 3x3 matrix L_i(zeta); their ordered product is the
monodromy T(zeta).  The map acts on T by conjugation, so the coefficients
of its normalized characteristic polynomial are invariants H_1..H_{2m+2}
(m = floor(n/2)).  Their Jacobian has full rank: they are independent.
"""

from pentagram import (
    GF, QQ, invariants_H, jacobian_rank_H, lax_conjugacy_holds, map_coords, monodromy_T,
    random_coords, spectral_poly, zero_curvature_holds,
)
from pentagram.errors import PentagramError
from pentagram.lax import lax_image, support_pattern

c = random_coords(5, QQ, seed=2, in_domain=True)
print("zero-curvature holds:", zero_curvature_holds(c))
print("T(f C) P = P T(C) up to scale:", lax_conjugacy_holds(c))
print(f"f(C) in the labeling used by the Lax pair:\n{lax_image(c)}")

T = monodromy_T(c)
print("T[0,0] =", T[0, 0])
q = spectral_poly(c)
print("monomials (lam, zeta):", sorted(q.support()))
print("expected pattern:     ", sorted(support_pattern(5)))

# conservation along an orbit, over Q and over F_11^2 (until the orbit degenerates)
for F in (QQ, GF(11, 2)):
    cur = random_coords(6, F, seed=5, in_domain=True)
    h = invariants_H(cur)
    ok, steps = True, 0
    for _ in range(8):
        try:
            cur = map_coords(cur)
        except PentagramError:
            break
        steps += 1
        ok = ok and invariants_H(cur) == h
    print(F.describe(), "H =", h, f"conserved over {steps} steps:", ok)

for n in (5, 6, 7):
    print(f"n={n}: rank dH = {jacobian_rank_H(random_coords(n, QQ, 3, in_domain=True))}"
          f" (number of invariants {2 * (n // 2) + 2})")
