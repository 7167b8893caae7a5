"""Single-variable Laurent polynomials with integer coefficients."""
from __future__ import annotations

import re


class LaurentPoly:
    """Sparse Laurent polynomial; zero coefficients are never stored.

    >>> q = LaurentPoly.monomial(1)
    >>> str(q + q**-1)
    'q^-1 + q'
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=None, var: str = "q"):
        self.var = var
        self.coeffs = {}
        if coeffs:
            for e, c in dict(coeffs).items():
                if c:
                    self.coeffs[int(e)] = c

    @classmethod
    def monomial(cls, exp: int, coeff=1, var: str = "q") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def constant(cls, c, var: str = "q") -> "LaurentPoly":
        return cls({0: c}, var)

    def _wrap(self, other):
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.constant(other, self.var)

    def __add__(self, other):
        other = self._wrap(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.coeffs.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({e * n: c ** (-n)}, self.var)
        result = LaurentPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int,)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Return p(q^k)."""
        return LaurentPoly({e * k: c for e, c in self.coeffs.items()}, self.var)

    def evaluate(self, x):
        return sum(c * x**e for e, c in self.coeffs.items())

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def max_degree(self):
        return max(self.coeffs) if self.coeffs else None

    def is_monomial_unit(self) -> bool:
        return len(self.coeffs) == 1 and next(iter(self.coeffs.values())) in (1, -1)

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                mono = str(abs(c))
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                if abs(c) != 1:
                    mono = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    _TERM = re.compile(r"([+-]?)\s*(\d*)\s*(?:([a-zA-Z])(?:\^\(?(-?\d+)\)?)?)?")

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "LaurentPoly":
        """Parse text like ``q^-1 + q^3 - 2q^5``."""
        s = text.replace(" ", "")
        out = {}
        pos = 0
        if not s:
            raise ValueError("empty polynomial")
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
            sign, num, v, exp = m.groups()
            if not num and not v:
                raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
            c = int(num) if num else 1
            if sign == "-":
                c = -c
            e = (int(exp) if exp is not None else 1) if v else 0
            out[e] = out.get(e, 0) + c
            pos = m.end()
        return cls(out, var)
