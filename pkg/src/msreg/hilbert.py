"""Hilbert series, Hilbert polynomials, dimension, degree and scheme length."""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .poly import FIELD_BITS, FIELD_MASK


class NotFiniteError(ValueError):
    """Raised by :func:`scheme_length` for positive-dimensional schemes."""

    def __init__(self, dimension):
        self.dimension = dimension
        super().__init__(f"scheme is not finite: projective dimension {dimension}")


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b, scale=1, shift=0):
    n = max(len(a), len(b) + shift)
    out = list(a) + [0] * (n - len(a))
    for j, y in enumerate(b):
        out[j + shift] += scale * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(gens, divides):
    gens = sorted(set(gens), key=lambda m: _mono_deg(m))
    out = []
    for m in gens:
        if not any(divides(g, m) for g in out):
            out.append(m)
    return out


def _mono_deg(m):
    d = 0
    while m:
        d += m & FIELD_MASK
        m >>= FIELD_BITS
    return d


def _exps(m, n):
    return [(m >> (FIELD_BITS * k)) & FIELD_MASK for k in range(n)]


def hilbert_numerator(monos, ring):
    """Numerator ``N(t)`` (integer coefficient list) of HS(S/M) = N(t)/(1-t)^n.

    ``monos`` are packed monomials generating M.  Pivot-variable recursion
    ``N(M) = N(M + (x^e)) + t^e N(M : x^e)`` memoized on minimal generators.
    """
    divides = ring.divides
    n = ring.nvars
    memo = {}

    def colon(gens, piv):
        out = []
        for m in gens:
            # m : piv = m / gcd(m, piv)
            g = ring.lcm(m, piv) - piv
            out.append(g)
        return out

    def rec(gens):
        gens = tuple(sorted(_minimalize(gens, divides)))
        hit = memo.get(gens)
        if hit is not None:
            return hit
        if not gens:
            res = [1]
        elif 0 in gens:
            res = [0]
        else:
            if _pairwise_coprime(gens, ring):
                res = [1]
                for m in gens:
                    d = _mono_deg(m)
                    res = _poly_mul(res, [1] + [0] * (d - 1) + [-1])
            else:
                # pivot on the variable occurring most often in mixed generators;
                # the smallest such exponent keeps x^e outside M
                mixed = [_exps(m, n) for m in gens if _nfields(m, n) > 1]
                counts = [sum(1 for ex in mixed if ex[i]) for i in range(n)]
                k = max(range(n), key=lambda i: counts[i])
                e = min(ex[k] for ex in mixed if ex[k])
                piv = e << (FIELD_BITS * k)
                a = rec(list(gens) + [piv])
                b = rec(colon(gens, piv))
                res = _poly_add(a, b, 1, e)
        memo[gens] = res
        return res

    return rec(list(monos))


def _nfields(m, n):
    c = 0
    while m:
        if m & FIELD_MASK:
            c += 1
        m >>= FIELD_BITS
    return c


def _pairwise_coprime(gens, ring):
    acc = 0
    for m in gens:
        if ring.lcm(acc, m) != acc + m:
            return False
        acc += m
    return True


@dataclass
class HilbertData:
    """Hilbert data of a graded quotient S/I in ``nvars`` variables.

    ``series_numerator`` is N(t) with HS = N(t)/(1-t)^nvars; ``reduced_numerator``
    is Q(t) with HS = Q(t)/(1-t)^dimension.  ``hilbert_polynomial`` lists
    rational coefficients of n^0, n^1, ...
    """

    nvars: int
    series_numerator: list
    reduced_numerator: list
    dimension: int
    degree: int
    hilbert_polynomial: list

    def hilbert_function(self, n):
        if n < 0:
            return 0
        return sum(c * comb(n - i + self.nvars - 1, self.nvars - 1)
                   for i, c in enumerate(self.series_numerator) if i <= n)

    def polynomial_value(self, n):
        return sum(c * Fraction(n) ** k for k, c in enumerate(self.hilbert_polynomial))

    @property
    def regularity_index(self):
        """Hilbert function agrees with the polynomial for all n at or above this."""
        return len(self.reduced_numerator) - self.dimension

    @property
    def projective_dimension(self):
        return self.dimension - 1

    def format_polynomial(self, var="n"):
        parts = []
        for k in range(len(self.hilbert_polynomial) - 1, -1, -1):
            c = self.hilbert_polynomial[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            coeff = str(c) if (c != 1 or k == 0) else ""
            parts.append(f"{coeff}{'*' if coeff and mono else ''}{mono}")
        return " + ".join(parts) if parts else "0"


def _binomial_poly(shift, k):
    """Coefficients in n of C(n + shift, k) = prod_{j<k} (n + shift - j)/ (j+1)."""
    poly = [Fraction(1)]
    for j in range(k):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * (shift - j)
            nxt[i + 1] += c
        poly = [c / (j + 1) for c in nxt]
    return poly


def hilbert_data_from_numerator(num, nvars):
    q = list(num)
    k = 0
    while any(q) and k < nvars:
        # divide by (1 - t) when q(1) == 0
        if sum(q) != 0:
            break
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out or [0]
        k += 1
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    dim = nvars - k
    if not any(q):
        return HilbertData(nvars, list(num), [0], -1, 0, [])
    degree = sum(q)
    hp = [Fraction(0)] * max(dim, 1)
    if dim > 0:
        for i, c in enumerate(q):
            for j, v in enumerate(_binomial_poly(dim - 1 - i, dim - 1)):
                hp[j] += c * v
    else:
        hp = [Fraction(0)]
    while len(hp) > 1 and hp[-1] == 0:
        hp.pop()
    return HilbertData(nvars, list(num), q, dim, degree, hp)


def hilbert_series(I, order=None):
    """Hilbert data of S/I computed from the leading-term ideal."""
    ring = I.ring
    if any(w != 1 for w in ring.grading):
        raise ValueError("Hilbert series needs the standard grading")
    gb = I.groebner(order)
    num = hilbert_numerator(gb.leading_monomials(), gb.ring)
    return hilbert_data_from_numerator(num, ring.nvars)


def hilbert_function(I, n):
    return hilbert_series(I).hilbert_function(n)


def scheme_length(I):
    """Length of the zero-dimensional projective scheme defined by I.

    The Hilbert polynomial is unchanged by saturation, so no saturation is
    needed; an empty scheme has length 0.
    """
    data = hilbert_series(I)
    if data.dimension <= 0:
        return 0
    if data.dimension > 1:
        raise NotFiniteError(data.dimension - 1)
    return data.degree
