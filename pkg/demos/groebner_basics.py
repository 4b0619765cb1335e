"""
Groebner bases, Hilbert series and Betti tables
===============================================

A first tour of the kernel on the twisted cubic.
"""

from msreg.geometry import coordinate_ring, parametrized_image_ideal
from msreg.groebner import eliminate, ideal, saturate
from msreg.hilbert import hilbert_series
from msreg.poly import PolynomialRing
from msreg.resolution import betti_table, minimal_free_resolution

# polynomials over GF(32003); grevlex is the default order
R = coordinate_ring(4)
I = ideal(R, ["x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"])
for g in I.groebner():
    print(g)

# the same ideal from the parametrization (s^3, s^2 t, s t^2, t^3)
P = PolynomialRing("s t")
s, t = P.gens()
J = parametrized_image_ideal([s ** 3, s ** 2 * t, s * t ** 2, t ** 3])
print("implicitization agrees:", I.groebner() == J.groebner())

# or by eliminating s, t from the graph; s, t get degree 1 and the x's degree 3
G = PolynomialRing("s t x0 x1 x2 x3", grading=[1, 1, 3, 3, 3, 3])
E = eliminate(ideal(G, ["x0-s^3", "x1-s^2*t", "x2-s*t^2", "x3-t^3"]), ["s", "t"])
print("eliminated:", [str(g) for g in E])

H = hilbert_series(I)
print("Hilbert polynomial:", H.format_polynomial(), " degree", H.degree)

# multiplying by the irrelevant ideal changes the ideal but not the curve
K = I * ideal(R, R.gens())
print("saturation recovers I:", saturate(K) == I)

print(betti_table(minimal_free_resolution(I)).to_grid())
