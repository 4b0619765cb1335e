"""Closed-form values for surfaces of maximal sectional regularity.

Pure integer arithmetic, independent of the Groebner/resolution pipeline.
Binomials with negative or too small top are 0.
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement


class HypothesisError(ValueError):
    """Input outside the range where a formula is stated."""


def C(n, k):
    """Binomial coefficient, zero for n < 0, k < 0 or n < k."""
    if k < 0 or n < 0 or n < k:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _check_range(r, d):
    if not (5 <= r < d):
        raise HypothesisError(f"need 5 <= r < d, got r={r}, d={d}")


def _check_lemma_410(a, r, d):
    _check_range(r, d)
    if not (1 <= a and 2 * a <= r - 2):
        raise HypothesisError(f"need 1 <= a <= (r-2)/2, got a={a}, r={r}")


def h1_lemma_410(a, r, d):
    """h^1 of the ideal sheaf in degree d-r+1 for Y in |H+(d-r+2)F| on S(1, a, r-a-3), as quoted.

    The a = 1, r >= 6 value disagrees with :func:`h1_scroll_divisor`, which
    gives d-r+1 there.
    """
    _check_lemma_410(a, r, d)
    if a >= 2:
        return 1
    if r >= 6:
        return d - r
    return C(d - 3, 2)


def h1_scroll_divisor(exponents, k, n):
    """h^1 of the ideal sheaf in degree n of a divisor in |H+kF| on the scroll S(exponents).

    Equals h^1(P^1, Sym^{n-1}(E)(-k)) with E = sum O(a_i), summed term by term.
    """
    if n < 1:
        raise HypothesisError("formula needs n >= 1")
    total = 0
    for c in combinations_with_replacement(exponents, n - 1):
        e = sum(c) - k
        total += max(0, -e - 1)
    return total


def beta1_lemma_410(a, r, d):
    """beta_{1,d-r+2} for the same surfaces."""
    _check_lemma_410(a, r, d)
    if a >= 2:
        return 1
    if r >= 6:
        return d - r + 3
    return C(d - 1, 2)


@dataclass
class BettiBounds:
    """Betti data u_i = beta_{i,1}, v_i = beta_{i,2} and the block beta_{i,d-r+2}.

    ``u_exact`` / ``v_exact`` hold the values pinned down by the formulas,
    ``u_bound`` the upper bounds u_i <= c_i where only a bound is known.
    """

    r: int
    d: int
    a: dict = field(default_factory=dict)
    c: dict = field(default_factory=dict)
    u_exact: dict = field(default_factory=dict)
    u_bound: dict = field(default_factory=dict)
    v_exact: dict = field(default_factory=dict)
    v_relation: dict = field(default_factory=dict)
    tail: dict = field(default_factory=dict)

    def v_from_u(self, u):
        """Fill the v_i tied to u_{i+1} from computed u values."""
        return {i: u.get(i + 1, 0) + self.a[i + 1] - self.c[i + 1] for i in self.v_relation}


def betti_bounds_34c(r, d):
    """Betti numbers of depth-2 surfaces of maximal sectional regularity with d <= 2r-5."""
    _check_range(r, d)
    if d > 2 * r - 5:
        raise HypothesisError(f"need d <= 2r-5, got d={d}, r={r}")
    out = BettiBounds(r, d)
    for i in range(1, r + 1):
        out.a[i] = (d - r + 1) * C(r - 1, i) + C(r - 2, i - 1)
        out.c[i] = (d - 1) * C(r - 2, i) - C(r - 2, i + 1)
        out.tail[i] = C(r - 2, i - 1)
    out.u_exact[1] = C(r, 2) - d - 1
    for i in range(2, 2 * r - d - 2):
        out.u_exact[i] = out.c[i] - out.a[i]
    for i in range(2 * r - d - 2, r):
        out.u_bound[i] = out.c[i]
    for i in range(1, 2 * r - d - 3):
        out.v_exact[i] = 0
    out.v_exact[r] = 0
    for i in range(2 * r - d - 3, r - 2):
        out.v_relation[i] = True
    out.v_exact[r - 2] = d - r
    return out


@dataclass
class Type8Betti:
    r: int
    u: dict
    u_candidates: dict
    v: dict
    v_by_u: dict
    tail: dict


def betti_type8(r):
    """Betti numbers of surfaces of degree r+1, maximal sectional regularity and depth 2.

    u_{r-3} is only known to lie in {0, r-2}; ``v_by_u`` gives v_{r-4} for each choice.
    """
    if r < 5:
        raise HypothesisError("need r >= 5")
    u = {1: C(r - 1, 2) - 3}
    for i in range(2, r - 3):
        u[i] = (r - 1) * C(r - 2, i) - C(r - 2, i + 1) - 3 * C(r - 2, i - 1)
    for i in range(r - 2, r + 1):
        u[i] = 0
    cands = {r - 3: (0, r - 2)}
    v = {i: 0 for i in range(1, r - 4)}
    v.update({i: 0 for i in range(r - 1, r + 1)})
    v[r - 3] = 2 * r - 4
    v[r - 2] = 3
    base = (r - 1) * C(r - 2, 2) - 3 * C(r - 2, 3) - r + 2
    v_by_u = {x: x + base for x in cands[r - 3]}
    tail = {i: C(r - 2, i - 1) for i in range(1, r + 1)}
    return Type8Betti(r, u, cands, v, v_by_u, tail)


def h2_table_34b(r, d, n):
    """h^2 of the ideal sheaf in degree n when S/(I ∩ L) is Cohen-Macaulay."""
    if n <= 0:
        return C(d - r + 2, 2)
    if n <= d - r:
        return C(d - r - n + 2, 2)
    return 0


TAU_23 = (2, 3)
TAU_22 = (2, 2)
TAU_11 = (1, 1)


def tau_cases_414f(r, d):
    """Admissible pairs (depth X, depth X ∪ F) for planar extremal varieties."""
    _check_range(r, d)
    if d <= 2 * r - 4:
        return {TAU_23}
    if d <= 3 * r - 7:
        return {TAU_11, TAU_22, TAU_23}
    return {TAU_11, TAU_22}


@dataclass
class IdentityCheck:
    name: str
    lhs: object
    rhs: object

    @property
    def ok(self):
        return self.lhs == self.rhs


REQUIRED = ("betti_X", "betti_Y", "h2_X", "h2_Y", "e", "N")


def planar_case_identities(r, d, computed):
    """Evaluate the planar-case identities on a computed report.

    ``computed`` maps: ``betti_X``, ``betti_Y`` ({(i, j): beta}), ``h2_X``,
    ``h2_Y`` ({n: dim}), ``e`` (stable h^2 of X) and ``N`` (None = -inf).
    """
    missing = [k for k in REQUIRED if k not in computed]
    if missing:
        raise HypothesisError(f"incomplete report: missing {', '.join(missing)}")
    bX, bY = computed["betti_X"], computed["betti_Y"]
    h2X, h2Y = computed["h2_X"], computed["h2_Y"]
    j = d - r + 2
    checks = []
    for i in range(1, r + 1):
        checks.append(IdentityCheck(f"beta_{i},{j}(X) - beta_{i},{j}(Y)",
                                    bX.get((i, j), 0) - bY.get((i, j), 0), C(r - 2, i - 1)))
    if d - r in h2X:
        checks.append(IdentityCheck(f"h2_X({d - r})", h2X[d - r], 1))
    for n in sorted(h2X):
        if n > d - r:
            checks.append(IdentityCheck(f"h2_X({n})", h2X[n], 0))
        if n >= 0 and n in h2Y:
            checks.append(IdentityCheck(f"h2_X({n}) = h2_Y({n}) + C({d - r + 2 - n},2)",
                                        h2X[n], h2Y[n] + max(0, C(-n + d - r + 2, 2))))
    if 0 in h2Y:
        checks.append(IdentityCheck("e(X) = h2_Y(0) + C(d-r+2,2)", computed["e"], h2Y[0] + C(d - r + 2, 2)))
    N = computed["N"]
    n_small = N is None or N <= d - r
    checks.append(IdentityCheck("N(X) <= d-r  iff  beta_{r,d-r+2}(X) = 0", n_small, bX.get((r, j), 0) == 0))
    return checks
