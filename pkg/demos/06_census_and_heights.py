"""
Orbit census over finite fields, and height growth over Q
=========================================================

Over F_q every orbit either cycles or reaches a point where the map is
undefined.  An exhaustive census classifies every point; the fraction that
cycles is reported for F_5 and (sampled) F_25.  Fibers of the invariants
collect the cycle lengths.  Over Q, the Weil height of f^t(C) grows
polynomially in t; the fitted exponent is printed.

Pass --full to also run the exhaustive F_7, n = 5 census (about 10^7 points,
roughly a minute and a half).
"""

import sys

from pentagram import GF, QQ, census, fiber_periods, height_growth, random_coords

rep = census(5, GF(5))
print("F_5, n=5:", rep.counts, "dyndom fraction", rep.dyndom_fraction)
print("conservation failures:", rep.conservation_failures, "audit failures:", rep.audit_failures)

sampled = census(5, GF(5, 2), mode="sampled", seed=0, sample_size=2000, horizon=1000, threads=2)
print("F_25, n=5 (2000 samples):", sampled.counts, "dyndom fraction", sampled.dyndom_fraction)

small = census(4, GF(7))
print("F_7, n=4:", small.counts)
print(fiber_periods(small)["single_period_fraction"], "of multi-orbit fibers have one period")

if "--full" in sys.argv:
    big = census(5, GF(7), bound=10 ** 7)
    fp = fiber_periods(big)
    print("F_7, n=5:", big.counts, "multi-orbit fibers", fp["multi_orbit_fibers"],
          "single-period fraction", fp["single_period_fraction"])

for s in range(1, 6):
    hs = height_growth(random_coords(5, QQ, s, in_domain=True), 12)
    print(f"seed {s}: h(0)={hs.h_log[0]:.1f} h(12)={hs.h_log[-1]:.1f} alpha={hs.alpha:.2f}")
