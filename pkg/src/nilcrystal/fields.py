"""Exact computation fields: a large prime field and the rationals.

Elements are plain Python objects (ints reduced mod p, or Fractions), so
matrices are just nested lists and all arithmetic stays exact.
"""

from fractions import Fraction

DEFAULT_PRIME = 2**61 - 1


class PrimeField:
    """F_p with elements stored as ints in [0, p)."""

    def __init__(self, p=DEFAULT_PRIME):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        self.p = p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def of_int(self, k):
        return k % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def random(self, rng):
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def to_str(self, a):
        return str(a)

    def from_str(self, s):
        return int(s) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """Exact rationals via fractions.Fraction."""

    # Sampling range for "random" rationals; only genericity matters.
    RAND_BOUND = 2**31

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return Fraction(rng.randrange(self.RAND_BOUND))

    def random_nonzero(self, rng):
        return Fraction(rng.randrange(1, self.RAND_BOUND))

    def to_str(self, a):
        f = Fraction(a)
        return f"{f.numerator}/{f.denominator}"

    def from_str(self, s):
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "RationalField()"


def default_field():
    return PrimeField()


def field_from_spec(spec):
    """Parse a field choice string: 'rat' or 'prime:P'."""
    if spec == "rat":
        return RationalField()
    if spec == "prime":
        return PrimeField()
    if spec.startswith("prime:"):
        return PrimeField(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown field spec {spec!r}")


def field_size(field):
    """Size of the field, or None for an infinite field."""
    return field.p if isinstance(field, PrimeField) else None
