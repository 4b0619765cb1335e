import random
from fractions import Fraction

import pytest

from msreg.geometry import extremal_plane, random_line_in, scroll_ideal, xf_ideal
from msreg.groebner import GradedIdeal, ideal, saturate
from msreg.hilbert import NotFiniteError, hilbert_function, hilbert_numerator, hilbert_series, scheme_length
from msreg.poly import LEX, PolynomialRing, block_order
from msreg.recipes import F_73


def test_zero_ideal():
    H = hilbert_series(GradedIdeal(PolynomialRing(4), []))
    assert H.series_numerator == [1]
    assert H.dimension == 4 and H.degree == 1


def test_twisted_cubic(twisted_cubic):
    H = hilbert_series(twisted_cubic)
    assert H.hilbert_polynomial == [1, 3]
    assert (H.dimension, H.degree) == (2, 3)
    assert [hilbert_function(twisted_cubic, n) for n in range(5)] == [1, 4, 7, 10, 13]
    assert H.format_polynomial() == "3*n + 1"


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 3), (3, 3)])
def test_scroll_polynomial(a, b):
    d = a + b
    H = hilbert_series(scroll_ideal([a, b]))
    assert H.hilbert_polynomial == [1, Fraction(d + 2, 2), Fraction(d, 2)]
    assert H.degree == d and H.dimension == 3


def test_hilbert_function_matches_degreewise_count(twisted_cubic):
    for n in range(6):
        assert hilbert_function(twisted_cubic, n) == len(twisted_cubic.ring.monomials_of_degree(n)) - len(
            twisted_cubic.in_degree(n))


def test_finite_lengths():
    R = PolynomialRing("x0 x1 x2")
    assert scheme_length(ideal(R, ["x2", "x0*x1"])) == 2
    assert scheme_length(ideal(PolynomialRing("x0 x1"), ["x0^2"])) == 2
    with pytest.raises(NotFiniteError):
        scheme_length(ideal(R, ["x0"]))


def test_length_ignores_irrelevant_component():
    R = PolynomialRing("x0 x1 x2")
    I = ideal(R, ["x2", "x0*x1"])
    J = I * ideal(R, ["x0^2", "x1^2", "x2^2"])
    assert scheme_length(J) == 2 == scheme_length(saturate(J))


def test_series_independent_of_order():
    I = scroll_ideal([1, 2])
    H = hilbert_series(I)
    for order in (LEX, block_order(2)):
        J = GradedIdeal(I.ring.with_order(order), [g.to_ring(I.ring.with_order(order)) for g in I])
        assert hilbert_series(J) == H


def test_monomial_numerator():
    R = PolynomialRing("x y")
    x, y = R.gens()
    # S/(x^2, xy): 1 - 2t^2 + t^3
    assert hilbert_numerator([(x * x).lm, (x * y).lm], R) == [1, 0, -2, 1]


def test_line_in_extremal_plane_meets_surface_in_d_minus_r_plus_3_points():
    X = xf_ideal(3, 5, F_73)
    F = extremal_plane(X, 8, 6)
    L = random_line_in(F, random.Random(1))
    assert scheme_length(X + L.ideal()) == 5
