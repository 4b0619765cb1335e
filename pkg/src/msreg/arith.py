"""Exact arithmetic in prime fields GF(p), p odd.

Polynomial code works on raw ``int`` residues for speed; :class:`PrimeField`
and :class:`FieldElement` are the checked, user-facing layer on top of the
same helpers.
"""

from functools import lru_cache

DEFAULT_PRIME = 32003
VERIFY_PRIMES = (32003, 1000003)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FieldError(ArithmeticError):
    """Raised for invalid moduli and division by zero."""


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def inverse_mod(a, p):
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise FieldError("division by zero")
    r0, r1, s0, s1 = p, a, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % p


@lru_cache(maxsize=None)
def PrimeField(p=DEFAULT_PRIME):
    """Return the (cached) field GF(p); rejects p = 2 and composites."""
    return _PrimeField(p)


class _PrimeField:
    __slots__ = ("p",)

    def __init__(self, p):
        p = int(p)
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    def __call__(self, value):
        return FieldElement(value, self)

    def __repr__(self):
        return f"GF({self.p})"

    def __reduce__(self):
        return (PrimeField, (self.p,))

    def zero(self):
        return FieldElement(0, self)

    def one(self):
        return FieldElement(1, self)

    def elements(self):
        return (FieldElement(v, self) for v in range(self.p))

    def signed(self, value):
        """Representative of ``value`` in (-p/2, p/2], used for printing."""
        value %= self.p
        return value - self.p if value > self.p // 2 else value


class FieldElement:
    """An immutable element of GF(p) with canonical value in [0, p)."""

    __slots__ = ("value", "parent")

    def __init__(self, value, parent):
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "value", int(value) % parent.p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.parent is not self.parent:
                raise FieldError(f"cannot mix {self.parent} and {other.parent}")
            return other.value
        if isinstance(other, int):
            return other % self.parent.p
        return NotImplemented

    def _new(self, value):
        return FieldElement(value, self.parent)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value * inverse_mod(o, self.parent.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o * inverse_mod(self.value, self.parent.p))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return self._new(pow(self.value, n, self.parent.p))

    def inverse(self):
        return self._new(inverse_mod(self.value, self.parent.p))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.parent.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} mod {self.parent.p}"


def field_inverse(a):
    """Inverse of a nonzero field element."""
    return a.inverse()
