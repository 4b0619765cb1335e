import random

import pytest

from msreg.geometry import (GeometryError, LinearSubspace, contains_subspace, divisor_on_scroll_ideal,
                            extremal_plane, general_hyperplane_section, hyperplane_section, parametrized_image_ideal,
                            plane_curve_degree, project, random_line, random_line_in, scroll_ideal, secant_length,
                            xf_forms, xf_ideal)
from msreg.groebner import ideal
from msreg.hilbert import hilbert_series, scheme_length
from msreg.poly import PolynomialRing
from msreg.recipes import F_73, projection_center
from msreg.resolution import betti_table, minimal_free_resolution, reg_depth_from_betti


def reg_depth(I):
    return reg_depth_from_betti(betti_table(minimal_free_resolution(I)))


def test_small_scrolls(twisted_cubic):
    (q,) = list(scroll_ideal([1, 1]))
    R = q.ring
    assert q == R.parse("x0*x3 - x1*x2")
    assert scroll_ideal([3]) == twisted_cubic.__class__(scroll_ideal([3]).ring, list(twisted_cubic))
    S = scroll_ideal([1, 1, 1])
    assert S.ring.nvars == 6 and len(S) == 3
    assert all(g.degree() == 2 for g in S)
    assert hilbert_series(S).degree == 3


def test_scroll_rejects_degenerate_input():
    with pytest.raises(GeometryError):
        scroll_ideal([0, 0])


def test_segre_parametrization():
    P = PolynomialRing("u v s t")
    u, v, s, t = P.gens()
    I = parametrized_image_ideal([u * s, u * t, v * s, v * t], base=("u", "v", "s", "t"))
    assert [str(g) for g in I] == ["x1*x2-x0*x3"]


def test_twisted_cubic_parametrization(twisted_cubic):
    P = PolynomialRing("s t")
    s, t = P.gens()
    I = parametrized_image_ideal([s ** 3, s ** 2 * t, s * t ** 2, t ** 3])
    assert sorted(str(g) for g in I.groebner()) == sorted(str(g) for g in twisted_cubic.groebner())


def test_xf_matches_parametrization():
    X = xf_ideal(3, 5, F_73)
    Y = parametrized_image_ideal(xf_forms(3, 5, F_73)[1])
    assert X.groebner() == Y.groebner()
    assert hilbert_series(X).degree == 8


def test_hyperplane_class_divisor_on_s12():
    C = divisor_on_scroll_ideal((1, 2), 0, seed=0)
    assert hilbert_series(C).degree == 3


def test_curve_on_s12_meets_directrix_in_four_points():
    C = divisor_on_scroll_ideal((1, 2), 3, seed=0)
    H = hilbert_series(C)
    assert (H.degree, H.dimension) == (6, 2)
    line = ideal(C.ring, ["x2", "x3", "x4"])
    assert scheme_length(C + line) == 4


def test_divisor_on_segre_threefold_quadric_count():
    X = divisor_on_scroll_ideal((1, 1, 1), 3, seed=0)
    assert betti_table(minimal_free_resolution(X))[(1, 3)] == 10


def test_projection_examples():
    X = scroll_ideal([1, 2])
    same = project(X, LinearSubspace.from_points(X.ring, []))
    assert same.ring.nvars == X.ring.nvars and len(same) == len(X)
    Z = scroll_ideal([3, 5])
    L, _ = projection_center(3, 5, Z.ring, 0)
    Y = project(Z, L)
    assert Y.ring.nvars == 9
    assert hilbert_series(Y).degree == 8
    reg, _, depth = reg_depth(Y)
    assert (reg, depth) == (3, 2)


def test_projection_from_point_on_variety_fails():
    X = scroll_ideal([1, 2])
    with pytest.raises(GeometryError):
        project(X, LinearSubspace.from_points(X.ring, [[1, 0, 0, 0, 0]]))


def test_hyperplane_sections():
    C = general_hyperplane_section(scroll_ideal([1, 2]), seed=1)
    assert C.ring.nvars == 4
    reg, _, depth = reg_depth(C)
    assert reg == 2 and depth == 2
    Ch = general_hyperplane_section(xf_ideal(3, 5, F_73), seed=1)
    assert reg_depth(Ch)[0] == 5
    X = scroll_ideal([1, 1])
    with pytest.raises(GeometryError):
        hyperplane_section(ideal(X.ring, ["x0", "x1*x2"]), X.ring.parse("2*x0"))


def test_secant_lengths():
    X = scroll_ideal([1, 2])
    ruling = LinearSubspace.from_points(X.ring, [[1, 0, 0, 0, 0], [0, 0, 1, 0, 0]])
    rec = secant_length(X, ruling, 3, 4)
    assert rec.contained and rec.classification == "contained"
    rec = secant_length(X, random_line(X.ring, random.Random(2)), 3, 4)
    assert rec.length == 0 and not rec.contained


def test_extremal_plane_of_xf_3_5():
    X = xf_ideal(3, 5, F_73)
    d, r = 8, 6
    F = extremal_plane(X, d, r)
    assert F.dimension == 2
    assert plane_curve_degree(X, F) == d - r + 3
    rng = random.Random(5)
    for _ in range(3):
        L = random_line_in(F, rng)
        rec = secant_length(X, L, d, r)
        assert rec.length == d - r + 3
        assert rec.classification == "proper extremal"
        # no line meets X in more than d - r + 4 points
        assert rec.length <= d - r + 4
    assert not contains_subspace(X, F)
