"""Value carriers: commutative rings with unity used for section values."""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NotPrime


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


class Ring:
    """Interface shared by the built-in carriers."""

    name = "ring"
    exact = True

    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def eq(self, a, b) -> bool:
        return a == b

    def coerce(self, v):
        return v

    def parse(self, text: str):
        return self.coerce(int(text))

    def format(self, v) -> str:
        return str(v)

    def elements(self):
        """All elements, for finite carriers; ``None`` otherwise."""
        return None

    def random(self, rng):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


class Integers(Ring):
    name = "int"

    def coerce(self, v):
        return int(v)

    def random(self, rng):
        return rng.randint(-50, 50)


class Rationals(Ring):
    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        return Fraction(v)

    def parse(self, text):
        return Fraction(text.strip())

    def format(self, v):
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def random(self, rng):
        return Fraction(rng.randint(-20, 20), rng.randint(1, 6))


class Reals(Ring):
    """Floating point values compared with an absolute tolerance."""

    name = "real"
    exact = False
    zero = 0.0
    one = 1.0

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    def eq(self, a, b):
        return abs(a - b) <= self.tol

    def coerce(self, v):
        return float(v)

    def parse(self, text):
        return float(text)

    def format(self, v):
        return format(float(v), ".6g")

    def random(self, rng):
        return rng.uniform(-10.0, 10.0)

    def __repr__(self):
        return f"Reals(tol={self.tol})"


class PrimeField(Ring):
    """The field of integers modulo a prime ``p``; elements are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def coerce(self, v):
        return int(v) % self.p

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


INTEGERS = Integers()
RATIONALS = Rationals()
