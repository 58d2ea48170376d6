import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sheafdp.errors import NotPrime
from sheafdp.rings import INTEGERS, PrimeField, RATIONALS, Reals, is_prime

ints = st.integers(-10**6, 10**6)
fracs = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**4)


def _laws(r, a, b, c):
    eq = r.eq
    assert eq(r.add(a, b), r.add(b, a))
    assert eq(r.mul(a, b), r.mul(b, a))
    assert eq(r.add(r.add(a, b), c), r.add(a, r.add(b, c)))
    assert eq(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)))
    assert eq(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)))
    assert eq(r.add(a, r.zero), a)
    assert eq(r.mul(a, r.one), a)
    assert eq(r.add(a, r.neg(a)), r.zero)


@given(ints, ints, ints)
def test_integer_laws(a, b, c):
    _laws(INTEGERS, a, b, c)


@given(fracs, fracs, fracs)
def test_rational_laws(a, b, c):
    _laws(RATIONALS, a, b, c)


@given(*[st.floats(-100, 100)] * 3)
def test_real_laws_within_tolerance(a, b, c):
    _laws(Reals(tol=1e-6), a, b, c)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_prime_field_laws_exhaustive(p):
    f = PrimeField(p)
    for a, b, c in itertools.product(f.elements(), repeat=3):
        _laws(f, a, b, c)
    for a in range(1, p):
        assert f.mul(a, f.inv(a)) == 1


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        PrimeField(5).inv(0)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 15])
def test_not_prime(p):
    assert not is_prime(p)
    with pytest.raises(NotPrime):
        PrimeField(p)


def test_formatting():
    assert RATIONALS.format(Fraction(3, 1)) == "3"
    assert RATIONALS.format(Fraction(-1, 2)) == "-1/2"
    assert Reals().format(1 / 3) == "0.333333"
    assert Reals().format(2.0) == "2"
