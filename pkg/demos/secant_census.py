"""
Extremal secant lines
=====================

Samples line sections of the three-dimensional scroll for the regimes of the
divisor construction and counts which ones meet the surface in the extremal
length.
"""

from msreg.cli import REGIMES
from msreg.geometry import construction_71, extremal_secant_census

for case, (a, b, d) in REGIMES.items():
    X = construction_71(a, b, d, case, seed=0)
    rep = extremal_secant_census(X, a, b, d, case=case, samples=20, seed=0)
    print(f"case {case}: S(1,{a},{b}), d={d}: {rep.count} extremal lines, "
          f"span dim {rep.span_dimension()}, family dim {rep.family_dimension()}")
