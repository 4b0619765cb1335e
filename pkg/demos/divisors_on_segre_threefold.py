"""
Surfaces on the Segre threefold
===============================

Surfaces X in |H + (d-3)F| on S(1,1,1) in P^5 have depth 1.  The first
local cohomology is compared with the direct sum over P^1.
"""

from msreg.geometry import divisor_on_scroll_ideal
from msreg.oracles import C, h1_scroll_divisor
from msreg.resolution import betti_table, graded_cohomology_dims, minimal_free_resolution, reg_depth_from_betti

for d in (6, 7, 8):
    X = divisor_on_scroll_ideal((1, 1, 1), d - 3, seed=0)
    R = minimal_free_resolution(X)
    B = betti_table(R)
    reg, pd, depth = reg_depth_from_betti(B)
    T = graded_cohomology_dims(X, window=(-2, d - 2), resolution=R)
    print(f"d={d}: reg {reg}, depth {depth}, N(X) = {T.index_of_normality}")
    print("   h^1:", T.values(1))
    print("   h^1 in degree d-4:", T[(1, d - 4)], " C(d-3,2) =", C(d - 3, 2),
          " P^1 sum =", h1_scroll_divisor((1, 1, 1), d - 3, d - 4))
    print("   beta_{1,d-3} =", B[(1, d - 3)], " C(d-1,2) =", C(d - 1, 2))
