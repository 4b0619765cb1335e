"""Sparse multivariate polynomials over GF(p) with term orders.

Internals
---------
A monomial is a packed ``int``: the exponent of variable ``k`` lives in bits
``[16k, 16k + 15)``, bit ``16k + 15`` is a guard bit.  Multiplication is
integer addition and divisibility is one subtraction against the guard mask.

Every term order is a linear functional on exponent vectors with integer
weights, so ``key(m * q) == key(m) + key(q)``.  Polynomials store their terms
as a list of ``(key, monomial, coeff)`` triples sorted by descending key.
"""

import re
from dataclasses import dataclass
from enum import Enum

from .arith import DEFAULT_PRIME, PrimeField, inverse_mod

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXP = (1 << (FIELD_BITS - 1)) - 1
_B = 1 << FIELD_BITS


class DimensionError(ValueError):
    pass


class ZeroPolynomialError(ValueError):
    pass


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class TermOrder:
    """``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.

    A block order compares the first ``block`` variables by grevlex and breaks
    ties with grevlex on the remaining ones.  ``weights`` replaces the
    standard degree in both grevlex comparisons.
    """

    kind: str = "grevlex"
    block: int = 0
    weights: tuple = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block" and self.block < 0:
            raise ValueError("block size must be nonnegative")

    def key_weights(self, nvars):
        """Integer weight per variable realizing the order as a linear key."""
        deg = self.weights or (1,) * nvars
        if len(deg) != nvars:
            raise DimensionError("weight vector has wrong length")
        if self.kind == "lex":
            return [_B ** (nvars - 1 - k) for k in range(nvars)]
        if self.kind == "grevlex":
            return _grevlex_weights(range(nvars), deg)
        b = min(self.block, nvars)
        rest = _grevlex_weights(range(b, nvars), deg)
        top = _grevlex_weights(range(b), deg)
        shift = _B ** (nvars - b + 1)
        return [w * shift for w in top] + rest


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def block_order(size, weights=None):
    return TermOrder("block", size, weights)


def _grevlex_weights(indices, deg):
    indices = list(indices)
    top = _B ** len(indices)
    return [top * deg[k] - _B ** j for j, k in enumerate(indices)]


@dataclass(frozen=True)
class Monomial:
    exponents: tuple

    @property
    def total_degree(self):
        return sum(self.exponents)


def monomial_compare(m1, m2, order=GREVLEX):
    """Compare two monomials (``Monomial`` or exponent sequences)."""
    e1 = tuple(getattr(m1, "exponents", m1))
    e2 = tuple(getattr(m2, "exponents", m2))
    if len(e1) != len(e2):
        raise DimensionError("monomials live in rings of different size")
    w = order.key_weights(len(e1))
    k1 = sum(a * b for a, b in zip(w, e1))
    k2 = sum(a * b for a, b in zip(w, e2))
    return Ordering((k1 > k2) - (k1 < k2))


class PolynomialRing:
    """GF(p)[x_0, ..., x_{n-1}] with a fixed term order.

    Rings compare equal when variables, prime and order agree; a different
    order is a different ring and :meth:`Polynomial.to_ring` converts.
    """

    def __init__(self, variables, p=DEFAULT_PRIME, order=GREVLEX, grading=None):
        if isinstance(variables, int):
            variables = [f"x{i}" for i in range(variables)]
        elif isinstance(variables, str):
            variables = variables.replace(",", " ").split()
        self.names = tuple(variables)
        self.nvars = n = len(self.names)
        self.field = PrimeField(p)
        self.p = self.field.p
        self.order = order
        self.grading = tuple(grading) if grading else (1,) * n
        if len(self.grading) != n:
            raise DimensionError("grading has wrong length")
        self.weights = order.key_weights(n)
        self.guard = sum(1 << (FIELD_BITS * k + FIELD_BITS - 1) for k in range(n))
        self.var_monos = [1 << (FIELD_BITS * k) for k in range(n)]
        self._index = {name: k for k, name in enumerate(self.names)}
        self._sig = (self.names, self.p, order, self.grading)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self._sig == other._sig

    def __hash__(self):
        return hash(self._sig)

    def __repr__(self):
        return f"GF({self.p})[{', '.join(self.names)}] ({self.order.kind})"

    def with_order(self, order, names=None):
        return PolynomialRing(names or self.names, self.p, order, self.grading)

    def with_grading(self, grading):
        return PolynomialRing(self.names, self.p, self.order, grading)

    def index(self, name):
        return self._index[name]

    # -- monomials --------------------------------------------------------

    def pack(self, exps):
        if len(exps) != self.nvars:
            raise DimensionError(f"expected {self.nvars} exponents, got {len(exps)}")
        m = 0
        for k, e in enumerate(exps):
            if e < 0 or e > MAX_EXP:
                raise ValueError(f"exponent {e} out of range")
            m |= e << (FIELD_BITS * k)
        return m

    def unpack(self, m):
        return tuple((m >> (FIELD_BITS * k)) & FIELD_MASK for k in range(self.nvars))

    def key(self, m):
        w = self.weights
        k = 0
        i = 0
        while m:
            e = m & FIELD_MASK
            if e:
                k += w[i] * e
            m >>= FIELD_BITS
            i += 1
        return k

    def mono_degree(self, m):
        g = self.grading
        d = 0
        i = 0
        while m:
            e = m & FIELD_MASK
            if e:
                d += g[i] * e
            m >>= FIELD_BITS
            i += 1
        return d

    def divides(self, a, b):
        return ((b | self.guard) - a) & self.guard == self.guard

    def lcm(self, a, b):
        ge = ((a | self.guard) - b) & self.guard
        mask = (ge >> (FIELD_BITS - 1)) * (MAX_EXP)
        return (a & mask) | (b & ~mask & ~self.guard)

    def gcd_is_one(self, a, b):
        """True when the two monomials share no variable."""
        return self.lcm(a, b) == a + b

    # -- constructors ----------------------------------------------------

    def zero(self):
        return Polynomial(self, [])

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c %= self.p
        return Polynomial(self, [(0, 0, c)] if c else [])

    def gen(self, k):
        if isinstance(k, str):
            k = self._index[k]
        m = self.var_monos[k]
        return Polynomial(self, [(self.weights[k], m, 1)])

    def gens(self):
        return [self.gen(k) for k in range(self.nvars)]

    def term(self, exps, coeff=1):
        coeff %= self.p
        if not coeff:
            return self.zero()
        m = self.pack(exps)
        return Polynomial(self, [(self.key(m), m, coeff)])

    def from_dict(self, d):
        """Build from ``{exponent tuple or packed monomial: coeff}``."""
        acc = {}
        p = self.p
        for e, c in d.items():
            m = e if isinstance(e, int) else self.pack(e)
            acc[m] = (acc.get(m, 0) + c) % p
        return self.from_mono_dict(acc)

    def from_mono_dict(self, acc):
        """Build from ``{packed monomial: residue}``, dropping zeros."""
        key = self.key
        terms = [(key(m), m, c) for m, c in acc.items() if c]
        terms.sort(reverse=True)
        return Polynomial(self, terms)

    def parse(self, text):
        return parse_polynomial(text, self)

    def monomials_of_degree(self, d):
        """All packed monomials of standard degree ``d`` in descending order."""
        out = []
        n = self.nvars

        def rec(k, left, acc):
            if k == n - 1:
                out.append(acc | (left << (FIELD_BITS * k)))
                return
            for e in range(left, -1, -1):
                rec(k + 1, left - e, acc | (e << (FIELD_BITS * k)))

        if n == 0:
            return [0] if d == 0 else []
        if d < 0:
            return []
        rec(0, d, 0)
        out.sort(key=self.key, reverse=True)
        return out

    def format_monomial(self, m):
        parts = []
        for name, e in zip(self.names, self.unpack(m)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


class Polynomial:
    """Immutable polynomial; ``terms`` is sorted by descending order key."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- structure ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def monomials(self):
        return [m for _, m, _ in self.terms]

    def coefficients(self):
        return [c for _, _, c in self.terms]

    def as_dict(self):
        return {m: c for _, m, c in self.terms}

    def exponent_dict(self):
        un = self.ring.unpack
        return {un(m): c for _, m, c in self.terms}

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        _, m, c = self.terms[0]
        return m, c

    @property
    def lm(self):
        return self.terms[0][1]

    @property
    def lc(self):
        return self.terms[0][2]

    def degree(self):
        """Largest degree of a term in the ring's grading; -1 for zero."""
        deg = self.ring.mono_degree
        return max((deg(m) for _, m, _ in self.terms), default=-1)

    def homogeneous_degree(self):
        """Degree if homogeneous (zero counts as homogeneous of degree -1), else None."""
        if not self.terms:
            return -1
        deg = self.ring.mono_degree
        d = deg(self.terms[0][1])
        for _, m, _ in self.terms:
            if deg(m) != d:
                return None
        return d

    def is_homogeneous(self):
        return self.homogeneous_degree() is not None

    def variables(self):
        seen = 0
        for _, m, _ in self.terms:
            seen |= m
        return [k for k in range(self.ring.nvars) if (seen >> (FIELD_BITS * k)) & FIELD_MASK]

    def is_sorted(self):
        keys = [k for k, _, _ in self.terms]
        return all(a > b for a, b in zip(keys, keys[1:]))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise DimensionError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _merge(self.terms, other.terms, 1, self.ring.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _merge(self.terms, other.terms, self.ring.p - 1, self.ring.p))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, [(k, m, p - c) for k, m, c in self.terms])

    def scale(self, c):
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        if c == 1:
            return self
        return Polynomial(self.ring, [(k, m, cc * c % p) for k, m, cc in self.terms])

    def mul_term(self, mono, coeff=1, key=None):
        p = self.ring.p
        coeff %= p
        if not coeff:
            return self.ring.zero()
        if key is None:
            key = self.ring.key(mono)
        return Polynomial(self.ring, [(k + key, m + mono, c * coeff % p) for k, m, c in self.terms])

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        if not b:
            return self.ring.zero()
        p = self.ring.p
        acc = {}
        keys = {}
        for kb, mb, cb in b:
            for ka, ma, ca in a:
                m = ma + mb
                v = acc.get(m)
                if v is None:
                    acc[m] = ca * cb
                    keys[m] = ka + kb
                else:
                    acc[m] = v + ca * cb
        terms = [(keys[m], m, c % p) for m, c in acc.items() if c % p]
        terms.sort(reverse=True)
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self):
        if not self.terms:
            return self
        return self.scale(inverse_mod(self.terms[0][2], self.ring.p))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(tuple((m, c) for _, m, c in self.terms))

    # -- conversion --------------------------------------------------------

    def to_ring(self, ring, var_map=None):
        """Move into ``ring``; ``var_map[k]`` is the target index of variable ``k``.

        Without ``var_map`` variables are matched by name.
        """
        src = self.ring
        if var_map is None:
            if ring.names == src.names:
                if ring.weights == src.weights:
                    return Polynomial(ring, list(self.terms))
                return ring.from_mono_dict(self.as_dict())
            var_map = [ring._index.get(name) for name in src.names]
        acc = {}
        for _, m, c in self.terms:
            e = src.unpack(m)
            t = 0
            for k, ek in enumerate(e):
                if ek:
                    if var_map[k] is None:
                        raise DimensionError(f"variable {src.names[k]} missing from target ring")
                    t |= ek << (FIELD_BITS * var_map[k])
            acc[t] = c
        return ring.from_mono_dict(acc)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _merge(ta, tb, cb_scale, p):
    """Merge two sorted term lists computing ``a + cb_scale * b``."""
    out = []
    i = j = 0
    na, nb = len(ta), len(tb)
    while i < na and j < nb:
        ka = ta[i][0]
        kb = tb[j][0]
        if ka > kb:
            out.append(ta[i])
            i += 1
        elif kb > ka:
            k, m, c = tb[j]
            out.append((k, m, c * cb_scale % p))
            j += 1
        else:
            c = (ta[i][2] + tb[j][2] * cb_scale) % p
            if c:
                out.append((ka, ta[i][1], c))
            i += 1
            j += 1
    out.extend(ta[i:])
    for k, m, c in tb[j:]:
        out.append((k, m, c * cb_scale % p))
    return out


def leading_term(f, order=None):
    """``(exponents, FieldElement)`` of the order-maximal term of ``f``."""
    if order is not None and order != f.ring.order:
        f = f.to_ring(f.ring.with_order(order))
    m, c = f.leading_term()
    return Monomial(f.ring.unpack(m)), f.ring.field(c)


def substitute(f, assignment, target=None):
    """Image of ``f`` under ``x_k -> assignment[k]``.

    ``assignment`` is a sequence indexed by variable or a mapping from
    variable names / indices to polynomials of a common target ring.
    """
    src = f.ring
    if isinstance(assignment, dict):
        images = [None] * src.nvars
        for k, v in assignment.items():
            images[src.index(k) if isinstance(k, str) else k] = v
    else:
        images = list(assignment)
    if len(images) != src.nvars:
        raise DimensionError("assignment must cover every variable")
    if target is None:
        target = next((g.ring for g in images if isinstance(g, Polynomial)), None)
    used = set(f.variables())
    for k in used:
        if images[k] is None:
            raise DimensionError(f"no image for variable {src.names[k]}")
    images = [target.constant(g) if isinstance(g, int) else g for g in images]
    powers = [dict() for _ in range(src.nvars)]

    def power(k, e):
        cache = powers[k]
        if e not in cache:
            cache[e] = images[k] ** e
        return cache[e]

    result = target.zero()
    for _, m, c in f.terms:
        t = target.constant(c)
        for k, e in enumerate(src.unpack(m)):
            if e:
                t = t * power(k, e)
        result = result + t
    return result


# -- text I/O ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message, column=None):
        self.column = column
        super().__init__(message if column is None else f"{message} at column {column}")


def parse_polynomial(text, ring):
    """Parse ``x0*x2-x1^2`` style input; ``*`` is optional between factors."""
    tokens = []
    for mt in _TOKEN.finditer(text):
        if mt.group(1):
            tokens.append(("num", int(mt.group(1)), mt.start(1) + 1))
        elif mt.group(2):
            tokens.append(("var", mt.group(2), mt.start(2) + 1))
        elif mt.group(3):
            tokens.append(("op", mt.group(3), mt.start(3) + 1))
    tokens.append(("end", None, len(text) + 1))
    pos = 0

    def peek():
        return tokens[pos]

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        sign = 1
        kind, val, col = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        result = term().scale(sign)
        while True:
            kind, val, col = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def term():
        result = factor()
        while True:
            kind, val, col = peek()
            if kind == "op" and val == "*":
                take()
                result = result * factor()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                result = result * factor()
            else:
                return result

    def factor():
        kind, val, col = take()
        if kind == "num":
            base = ring.constant(val)
        elif kind == "var":
            if val not in ring._index:
                raise ParseError(f"unknown variable {val!r}", col)
            base = ring.gen(val)
        elif kind == "op" and val == "(":
            base = expr()
            k2, v2, c2 = take()
            if v2 != ")":
                raise ParseError("expected ')'", c2)
        else:
            raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", col)
        kind, val, col = peek()
        if kind == "op" and val == "^":
            take()
            k2, v2, c2 = take()
            if k2 != "num":
                raise ParseError("expected exponent", c2)
            base = base ** v2
        return base

    result = expr()
    kind, val, col = peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", col)
    return result


def format_polynomial(f):
    if not f.terms:
        return "0"
    ring = f.ring
    out = []
    for _, m, c in f.terms:
        s = ring.field.signed(c)
        mono = ring.format_monomial(m)
        if mono == "1":
            body = str(abs(s))
        elif abs(s) == 1:
            body = mono
        else:
            body = f"{abs(s)}*{mono}"
        if not out:
            out.append(("-" if s < 0 else "") + body)
        else:
            out.append(("-" if s < 0 else "+") + body)
    return "".join(out)
