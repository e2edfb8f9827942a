"""
Spectral curves: good fibers and their genus
=============================================

Normal-form curves R(x, y) = x^3 y^n - sum J_i x^2 y^(n+i-m) + sum I_i x y^(m-i) - 1
over a finite field.  Two explicit n = 5 fibers are checked for smoothness
in the affine patch; their point counts over F_q^r for r = 1..8 determine
the L-polynomial, and only genus 4 fits.
"""

import time

from pentagram import GF, build_curve, count_points, genus_fit, good_fiber_check, lemma_fiber
from pentagram.curves import fit_l_polynomial, hasse_weil_ok

for kind, p in (("tame", 7), ("wild", 5)):
    c = lemma_fiber(kind, 5, GF(p))
    print(f"--- {kind} fiber over F_{p}: R = {build_curve(c)}")
    rep = good_fiber_check(c)
    print("good:", rep.good, rep.conditions, "singular points:", rep.singular_points)
    t0 = time.perf_counter()
    counts = [count_points(c, r) for r in range(1, 9)]
    print(f"N_1..N_8 = {counts}  ({time.perf_counter() - t0:.1f} s)")
    print("Hasse-Weil with g=4:", all(hasse_weil_ok(N, p, r, 4) for r, N in enumerate(counts, 1)))
    print("L-polynomial:", fit_l_polynomial(counts, p, 4))
    print("genus fits:", {g: genus_fit(counts, p, g) for g in (2, 3, 4, 5)})
