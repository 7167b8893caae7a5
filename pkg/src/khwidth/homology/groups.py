"""Bigraded abelian groups and the thickness of their delta-support."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from math import gcd
from typing import Dict, Tuple

from ..laurent import LaurentPoly


class ThicknessError(ValueError):
    pass


@dataclass(frozen=True)
class ThicknessInterval:
    """Delta-support ``[delta_min, delta_max]`` with delta = j - 2i."""

    delta_min: int
    delta_max: int

    def __post_init__(self):
        if self.delta_min > self.delta_max:
            raise ThicknessError("delta_min exceeds delta_max")
        if (self.delta_max - self.delta_min) % 2:
            raise ThicknessError("delta_min and delta_max differ in parity")

    @property
    def width(self) -> int:
        return (self.delta_max - self.delta_min) // 2 + 1

    def shifted(self, s: int) -> "ThicknessInterval":
        return ThicknessInterval(self.delta_min + s, self.delta_max + s)

    def contains(self, other: "ThicknessInterval") -> bool:
        return self.delta_min <= other.delta_min and other.delta_max <= self.delta_max

    def as_tuple(self) -> tuple:
        return (self.delta_min, self.delta_max)

    def to_json(self) -> dict:
        return {"delta_min": self.delta_min, "delta_max": self.delta_max, "width": self.width}

    def __str__(self):
        return f"[{self.delta_min},{self.delta_max}]"


def _normalise_torsion(factors) -> tuple:
    """Invariant factors d1 | d2 | ... from any list of cyclic orders."""
    powers = {}
    for f in factors:
        n, p = int(f), 2
        while p * p <= n:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                powers.setdefault(p, []).append(p**e)
            p += 1
        if n > 1:
            powers.setdefault(n, []).append(n)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    out = [1] * length
    for vals in powers.values():
        vals = sorted(vals)
        for k, v in enumerate(vals):
            out[length - len(vals) + k] *= v
    return tuple(out)


class BigradedGroups:
    """Map (i, j) -> (free rank, torsion invariant factors).

    ``ring`` records the coefficients; over a field torsion is always empty.
    """

    def __init__(self, entries=None, ring: str = "Z"):
        self.ring = str(ring)
        self.entries: Dict[Tuple[int, int], Tuple[int, tuple]] = {}
        for (i, j), (rank, tors) in dict(entries or {}).items():
            tors = _normalise_torsion(tors)
            if rank or tors:
                self.entries[(int(i), int(j))] = (int(rank), tors)

    # -- accessors

    def rank(self, i, j) -> int:
        return self.entries.get((i, j), (0, ()))[0]

    def torsion(self, i, j) -> tuple:
        return self.entries.get((i, j), (0, ()))[1]

    def ranks(self) -> dict:
        return {k: r for k, (r, _) in self.entries.items() if r}

    def torsion_part(self) -> dict:
        return {k: t for k, (_, t) in self.entries.items() if t}

    def total_rank(self) -> int:
        return sum(r for r, _ in self.entries.values())

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, BigradedGroups) and self.entries == other.entries

    def __repr__(self):
        return f"BigradedGroups({self.entries!r}, ring={self.ring!r})"

    # -- gradings

    def deltas(self) -> set:
        return {j - 2 * i for (i, j) in self.entries}

    def thickness(self) -> ThicknessInterval:
        if not self.entries:
            raise ThicknessError("zero module has no thickness")
        ds = self.deltas()
        return ThicknessInterval(min(ds), max(ds))

    def euler_characteristic(self) -> LaurentPoly:
        out = {}
        for (i, j), (r, _) in self.entries.items():
            out[j] = out.get(j, 0) + (-1) ** (i % 2) * r
        return LaurentPoly(out)

    def shifted(self, di: int, dj: int) -> "BigradedGroups":
        return BigradedGroups({(i + di, j + dj): v for (i, j), v in self.entries.items()},
                              self.ring)

    def flipped(self) -> "BigradedGroups":
        """Free part at (-i, -j), torsion at (1 - i, -j): the mirror image."""
        out = {}
        for (i, j), (r, t) in self.entries.items():
            if r:
                rr, tt = out.get((-i, -j), (0, ()))
                out[(-i, -j)] = (rr + r, tt)
            if t:
                rr, tt = out.get((1 - i, -j), (0, ()))
                out[(1 - i, -j)] = (rr, tt + tuple(t))
        return BigradedGroups(out, self.ring)

    def tensor(self, other: "BigradedGroups") -> "BigradedGroups":
        """Kunneth formula: tensor terms at (i1+i2, j1+j2), Tor at (i1+i2-1, j1+j2).

        The differential raises i, so Tor drops one homological degree.
        """
        acc: Dict[Tuple[int, int], list] = {}

        def add(key, rank=0, tors=()):
            slot = acc.setdefault(key, [0, []])
            slot[0] += rank
            slot[1].extend(tors)

        for (i1, j1), (r1, t1) in self.entries.items():
            for (i2, j2), (r2, t2) in other.entries.items():
                key = (i1 + i2, j1 + j2)
                add(key, r1 * r2)
                add(key, 0, [a for a in t1 for _ in range(r2)])
                add(key, 0, [b for b in t2 for _ in range(r1)])
                add(key, 0, [gcd(a, b) for a in t1 for b in t2])
                add((i1 + i2 - 1, j1 + j2), 0, [gcd(a, b) for a in t1 for b in t2])
        return BigradedGroups({k: (r, tuple(t)) for k, (r, t) in acc.items()}, self.ring)

    def reduce_mod(self, p: int) -> "BigradedGroups":
        """Universal coefficients: groups over F_p from integral groups."""
        out: Dict[Tuple[int, int], int] = {}
        for (i, j), (r, t) in self.entries.items():
            k = r + sum(1 for d in t if d % p == 0)
            out[(i, j)] = out.get((i, j), 0) + k
            tor = sum(1 for d in t if d % p == 0)
            if tor:
                out[(i - 1, j)] = out.get((i - 1, j), 0) + tor
        name = "F2" if p == 2 else f"Fp:{p}"
        return BigradedGroups({k: (v, ()) for k, v in out.items()}, name)

    def rationalize(self) -> "BigradedGroups":
        return BigradedGroups({k: (r, ()) for k, (r, _) in self.entries.items()}, "Q")

    # -- text and JSON

    def poincare(self) -> str:
        """Rank polynomial in the style ``q^7 + q^11 t^2``."""
        terms = []
        for (i, j) in sorted(self.entries, key=lambda k: (k[0], k[1])):
            r = self.entries[(i, j)][0]
            if not r:
                continue
            parts = []
            if j:
                parts.append("q" if j == 1 else f"q^{j}")
            if i:
                parts.append("t" if i == 1 else f"t^{i}")
            mono = " ".join(parts)
            if not mono:
                terms.append(str(r))
            else:
                terms.append((str(r) if r != 1 else "") + mono)
        return " + ".join(terms) if terms else "0"

    def torsion_text(self) -> str:
        parts = []
        for (i, j) in sorted(self.entries):
            for d in self.entries[(i, j)][1]:
                parts.append(f"Z/{d} at (i={i}, j={j})")
        return "; ".join(parts)

    def to_json(self) -> dict:
        out = {
            "ring": self.ring,
            "entries": [
                {"i": i, "j": j, "rank": r, "torsion": list(t)}
                for (i, j), (r, t) in sorted(self.entries.items())
            ],
        }
        if self.entries:
            th = self.thickness()
            out.update(delta_min=th.delta_min, delta_max=th.delta_max, width=th.width)
        return out

    @classmethod
    def from_json(cls, data) -> "BigradedGroups":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({(e["i"], e["j"]): (e["rank"], tuple(e.get("torsion", ())))
                    for e in data["entries"]}, data.get("ring", "Z"))

    def csv_rows(self) -> list:
        rows = [("i", "j", "delta", "rank", "torsion")]
        for (i, j), (r, t) in sorted(self.entries.items()):
            rows.append((i, j, j - 2 * i, r, " ".join(map(str, t))))
        return rows


_POINCARE_TERM = re.compile(r"^(\d*)\s*(?:q\^?\{?(-?\d+)?\}?)?\s*(?:t\^?\{?(-?\d+)?\}?)?$")


def parse_poincare(text: str, ring: str = "Q") -> BigradedGroups:
    """Parse ``q^7 + 3q^23 t^8`` style rank polynomials (t exponent = i)."""
    acc: Dict[Tuple[int, int], int] = {}
    for raw in text.replace("*", "").split("+"):
        term = raw.strip()
        if not term:
            continue
        m = _POINCARE_TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse term {term!r}")
        coeff, qexp, texp = m.groups()
        has_q = "q" in term
        has_t = "t" in term
        j = (int(qexp) if qexp is not None else 1) if has_q else 0
        i = (int(texp) if texp is not None else 1) if has_t else 0
        acc[(i, j)] = acc.get((i, j), 0) + (int(coeff) if coeff else 1)
    return BigradedGroups({k: (v, ()) for k, v in acc.items()}, ring)
