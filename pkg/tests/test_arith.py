import pytest
from hypothesis import given, settings, strategies as st

from msreg.arith import FieldError, PrimeField, field_inverse, inverse_mod, is_prime


def test_small_inverse():
    assert inverse_mod(2, 7) == 4
    F = PrimeField(7)
    assert int(F(2).inverse()) == 4
    assert int(field_inverse(F(3))) == 5


def test_zero_has_no_inverse():
    with pytest.raises(FieldError):
        inverse_mod(0, 7)
    with pytest.raises(FieldError):
        PrimeField(7)(0).inverse()
    with pytest.raises(FieldError):
        PrimeField(7)(1) / 0


@pytest.mark.parametrize("p", [2, 1, 0, 4, 32001, 1000001])
def test_bad_characteristic(p):
    with pytest.raises(FieldError):
        PrimeField(p)


def test_primes():
    assert is_prime(32003) and is_prime(1000003)
    assert not is_prime(32001) and not is_prime(1)
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_thousand_random_inverses(rng):
    for p in (32003, 1000003):
        for _ in range(500):
            a = rng.randrange(1, p)
            assert a * inverse_mod(a, p) % p == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=-10**6, max_value=10**6))
def test_field_axioms(a, b):
    F = PrimeField(32003)
    x, y = F(a), F(b)
    assert x + y == y + x
    assert x * y == F(a * b)
    assert x - x == F.zero()
    if y:
        assert (x / y) * y == x


def test_elements_immutable_and_parent_checked():
    F, G = PrimeField(7), PrimeField(11)
    x = F(3)
    with pytest.raises(AttributeError):
        x.value = 4
    with pytest.raises(FieldError):
        x + G(1)
    assert int(x ** 6) == 1
    assert int(-x) == 4
