"""Exact scalar arithmetic: rationals and prime fields.

Every scalar in a computation belongs to one field object.  Rational
scalars are `fractions.Fraction` (always in lowest terms); prime-field
scalars are plain ints in [0, p).  No floating point anywhere.
"""
from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field of rational numbers with arbitrary-precision integers."""

    kind = "Rationals"
    char = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def of(self, x):
        """Coerce an int / Fraction / 'a' / 'a/b' string to a canonical scalar."""
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into the rationals")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def row_sub_scaled(self, row, f, other):
        # row - f*other, skipping zero entries of `other`
        return [x - f * y if y else x for x, y in zip(row, other)]

    def fmt(self, a):
        """JSON form: decimal string 'a' or 'a/b'."""
        return str(a)

    def parse(self, s):
        if isinstance(s, str):
            return Fraction(s)
        if isinstance(s, int):
            return Fraction(s)
        raise FieldError(f"bad rational scalar {s!r}")

    def to_json(self):
        return {"kind": "Rationals"}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The prime field F_p; scalars are ints reduced to [0, p)."""

    kind = "PrimeField"

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def of(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            if "/" in x:
                num, den = x.split("/")
                return int(num) * pow(int(den), -1, self.p) % self.p
            return int(x) % self.p
        raise FieldError(f"cannot coerce {x!r} into F_{self.p}")

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
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def row_sub_scaled(self, row, f, other):
        p = self.p
        return [(x - f * y) % p if y else x for x, y in zip(row, other)]

    def fmt(self, a):
        """JSON form: plain int in [0, p)."""
        return a

    def parse(self, s):
        if isinstance(s, int):
            return s % self.p
        if isinstance(s, str):
            return int(s) % self.p
        raise FieldError(f"bad prime-field scalar {s!r}")

    def to_json(self):
        return {"kind": "PrimeField", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F{self.p}"


def field_from_json(obj):
    if obj.get("kind") == "Rationals":
        return Rationals()
    if obj.get("kind") == "PrimeField":
        return PrimeField(int(obj["p"]))
    raise FieldError(f"unknown field spec {obj!r}")


def field_from_name(name):
    """Parse CLI field names: 'Q', 'Fp:101', or 'F101'."""
    name = name.strip()
    if name in ("Q", "QQ", "Rationals"):
        return Rationals()
    if name.startswith("Fp:"):
        return PrimeField(int(name[3:]))
    if name.startswith("F") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise FieldError(f"unknown field name {name!r} (expected Q, Fp:<p> or F<p>)")
