import pytest

from msreg.geometry import coordinate_ring, divisor_on_scroll_ideal, scroll_ideal, xf_ideal
from msreg.groebner import ideal
from msreg.hilbert import hilbert_function
from msreg.oracles import C
from msreg.poly import PolynomialRing
from msreg.recipes import F_73, F_74, F_75
from msreg.resolution import (INCONCLUSIVE, BettiTable, FreeModule, ModuleElement, ResolutionError, betti_table,
                              frame_resolution, graded_cohomology_dims, is_N2p, minimal_free_resolution,
                              reg_depth_from_betti, syzygies)


def betti(I):
    return betti_table(minimal_free_resolution(I))


def euler_matches_hilbert(I, R, top=8):
    """sum_i (-1)^i sum_j C(n - j + r, r) over F_i equals the Hilbert function."""
    nv = I.ring.nvars
    for n in range(top):
        chi = 0
        for i, tw in enumerate(R.twists):
            for t in tw:
                if n - t >= 0:
                    chi += (-1) ** i * C(n - t + nv - 1, nv - 1)
        if chi != hilbert_function(I, n):
            return False
    return True


def test_koszul_syzygy():
    R = PolynomialRing("x y")
    F = FreeModule(R, [0])
    x, y = R.gens()
    (s,) = syzygies([ModuleElement(F, {0: x}), ModuleElement(F, {0: y})])
    assert s.components == {0: y, 1: -x}
    assert syzygies([ModuleElement(F, {0: x * y})]) == []


def test_twisted_cubic_syzygies(twisted_cubic):
    F = FreeModule(twisted_cubic.ring, [0])
    syz = syzygies([ModuleElement(F, {0: g}) for g in twisted_cubic])
    assert len(syz) == 2
    assert all(s.degree() == 3 for s in syz)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_koszul_complex(n):
    R = coordinate_ring(n)
    B = betti(ideal(R, R.gens()))
    assert [B[(i, 0)] for i in range(n + 1)] == [C(n, i) for i in range(n + 1)]
    assert B.regularity == 0
    assert reg_depth_from_betti(B)[2] == 0


def test_twisted_cubic_table(twisted_cubic):
    R = minimal_free_resolution(twisted_cubic)
    B = betti_table(R)
    assert B.triples() == [(0, 0, 1), (1, 1, 3), (2, 1, 2)]
    assert R.check_complex() and R.check_homogeneous() and R.entries_in_maximal_ideal()
    assert euler_matches_hilbert(twisted_cubic, R)


def test_frame_is_a_resolution_and_minimizes(twisted_cubic):
    X = xf_ideal(3, 5, F_73)
    R = frame_resolution(X)
    assert R.check_complex() and R.check_homogeneous()
    assert euler_matches_hilbert(X, R)
    with pytest.raises(ResolutionError):
        betti_table(R)
    M = minimal_free_resolution(X)
    assert M.check_complex() and M.entries_in_maximal_ideal()
    assert euler_matches_hilbert(X, M)


def test_xf_3_5_table():
    B = betti(xf_ideal(3, 5, F_73))
    expected = BettiTable.from_rows({1: (6, 8, 3, 0, 0, 0), 2: (4, 12, 12, 4, 0, 0), 3: (0,) * 6,
                                     4: (1, 4, 6, 4, 1, 0)}, 6)
    assert B == expected
    assert reg_depth_from_betti(B) == (5, 5, 2)
    assert not is_N2p(B, 1)


def test_xf_rows():
    assert betti(xf_ideal(3, 8, F_74[1])).row(4)[:6] == (4, 18, 32, 28, 12, 2)
    assert betti(xf_ideal(3, 9, F_75[0])).row(8)[:5] == (1, 4, 6, 4, 1)


def test_scroll_invariants():
    B = betti(scroll_ideal([1, 2]))
    reg, pd, depth = reg_depth_from_betti(B)
    assert (reg, pd, depth) == (2, 2, 3)
    for a, b in [(1, 2), (2, 2), (2, 3)]:
        assert is_N2p(betti(scroll_ideal([a, b])), 5)


def test_quadric_has_N2p():
    B = betti(ideal(coordinate_ring(4), ["x0*x1 - x2*x3"]))
    assert all(is_N2p(B, p) for p in range(1, 5))


def test_betti_table_io():
    B = betti(scroll_ideal([1, 2]))
    assert BettiTable.from_dict(B.to_dict()) == B
    assert B.to_grid().splitlines()[0].split() == ["0", "1", "2"]
    with pytest.raises(ResolutionError):
        reg_depth_from_betti(BettiTable({}, 3))


def test_cohomology_of_cm_scroll():
    T = graded_cohomology_dims(scroll_ideal([1, 2]), window=(-2, 4))
    assert not any(T[(i, n)] for i in (0, 1, 2) for n in range(-2, 5))
    assert T.index_of_normality is None
    assert T.to_dict()["N"] == "-inf"


def test_twisted_cubic_h2(twisted_cubic):
    # h^2(S/I)_n = h^1(O_P1(3n)) = -3n-1 for n < 0
    T = graded_cohomology_dims(twisted_cubic, window=(-3, 3))
    assert [T[(2, n)] for n in range(-3, 4)] == [8, 5, 2, 0, 0, 0, 0]
    assert T.stable_h2 == INCONCLUSIVE


def test_divisor_on_segre_threefold():
    X = divisor_on_scroll_ideal((1, 1, 1), 3, seed=0)
    T = graded_cohomology_dims(X, window=(-2, 5))
    assert T[(1, 2)] == 3
    assert T.index_of_normality == 2
    assert T.stable_h2 == 0


def test_xf_3_5_has_no_h1():
    X = xf_ideal(3, 5, F_73)
    T = graded_cohomology_dims(X, indices=[0, 1], window=(-2, 5))
    assert not any(T[(1, n)] for n in range(-2, 6))
    assert T.stable_h2 is None
