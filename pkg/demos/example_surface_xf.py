"""
A surface of maximal sectional regularity
=========================================

Builds X_f in P^6 from (a, b) = (3, 5) and f = s^4 t + s^3 t^2 + s^2 t^3 + s t^4,
then reads off regularity, depth, cohomology and the extremal plane.
"""

import random

from msreg.cli import compute_invariants, format_report
from msreg.geometry import extremal_plane, random_line_in, secant_length, xf_ideal
from msreg.resolution import betti_table, minimal_free_resolution

a, b = 3, 5
f = "s^4*t+s^3*t^2+s^2*t^3+s*t^4"
X = xf_ideal(a, b, f)
r, d = a + 3, a + b

B = betti_table(minimal_free_resolution(X))
print(B.to_grid())

# reg = d - r + 3, the largest value a curve section allows
rep = compute_invariants(X, h_window=(-2, d - r + 2), with_plane=True)
print(format_report(rep.to_dict()))

# lines in the plane F meet X in d - r + 3 points
F = extremal_plane(X, d, r)
rng = random.Random(0)
for _ in range(3):
    rec = secant_length(X, random_line_in(F, rng), d, r)
    print(rec.length, rec.classification)

# the same table over a second prime
X2 = xf_ideal(a, b, f, p=1000003)
print("same table mod 1000003:", betti_table(minimal_free_resolution(X2)) == B)
