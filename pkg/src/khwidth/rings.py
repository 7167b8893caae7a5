"""Coefficient rings for chain-complex reduction.

Each ring knows how to normalise a coefficient, detect units, and invert
them.  Integers are Python ints, so there is no overflow to escalate from.
"""
from __future__ import annotations

from fractions import Fraction


class Ring:
    name = "?"
    is_field = False

    def coerce(self, x):
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def __repr__(self):
        return f"<ring {self.name}>"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class IntegerRing(Ring):
    name = "Z"

    def coerce(self, x):
        return int(x)

    def is_unit(self, x):
        return x == 1 or x == -1

    def inverse(self, x):
        if x not in (1, -1):
            raise ZeroDivisionError(f"{x} is not a unit in Z")
        return x


class RationalField(Ring):
    name = "Q"
    is_field = True

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        inv = Fraction(1) / x
        return inv.numerator if inv.denominator == 1 else inv


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = "F2" if p == 2 else f"Fp:{p}"

    def coerce(self, x):
        return int(x) % self.p

    def is_unit(self, x):
        return x % self.p != 0

    def inverse(self, x):
        return pow(int(x), -1, self.p)


ZZ = IntegerRing()
QQ = RationalField()
F2 = PrimeField(2)


def get_ring(spec) -> Ring:
    """Parse ``Z``, ``Q``, ``F2`` or ``Fp:<p>`` (a Ring passes through)."""
    if isinstance(spec, Ring):
        return spec
    s = str(spec).strip()
    if s in ("Z", "ZZ"):
        return ZZ
    if s in ("Q", "QQ"):
        return QQ
    if s == "F2":
        return F2
    if s.startswith("Fp:"):
        return PrimeField(int(s[3:]))
    raise ValueError(f"unknown ring {spec!r}; expected Z, Q, F2 or Fp:<p>")
