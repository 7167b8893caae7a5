"""Three-strand braids: Burau word problem, normal forms and width predictions."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .diagram import BraidWord, DiagramError, LinkDiagram, closure
from .homology.groups import ThicknessInterval
from .laurent import LaurentPoly

_T = LaurentPoly({1: 1}, "t")
_ONE = LaurentPoly({0: 1}, "t")
_ZERO = LaurentPoly({}, "t")
_MINUS_T = LaurentPoly({1: -1}, "t")
_INV_T = LaurentPoly({-1: 1}, "t")
_MINUS_INV_T = LaurentPoly({-1: -1}, "t")

# reduced Burau matrices and their inverses
_GEN = {
    (1, 1): ((_MINUS_T, _ONE), (_ZERO, _ONE)),
    (1, -1): ((_MINUS_INV_T, _INV_T), (_ZERO, _ONE)),
    (2, 1): ((_ONE, _ZERO), (_T, _MINUS_T)),
    (2, -1): ((_ONE, _ZERO), (_ONE, _MINUS_INV_T)),
}


def _matmul(A, B):
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(2)), LaurentPoly({}, "t")) for j in range(2))
        for i in range(2)
    )


def burau(word: BraidWord) -> tuple:
    """Reduced Burau image of a 3-strand word as a 2x2 tuple of Laurent polynomials in t."""
    if word.strands != 3:
        raise DiagramError("the Burau oracle is implemented for B_3 only")
    M = ((_ONE, _ZERO), (_ZERO, _ONE))
    for g, e in word.letters:
        M = _matmul(M, _GEN[(g, e)])
    return M


def burau_det(M) -> LaurentPoly:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def braids_equal(w1: BraidWord, w2: BraidWord) -> bool:
    """Word problem in B_3: Burau is faithful there, exponent sum separates the centre."""
    return burau(w1) == burau(w2) and w1.exponent_sum() == w2.exponent_sum()


def _word(syllables) -> BraidWord:
    return BraidWord.from_syllables(3, [(g, e) for g, e in syllables if e])


def norm_form(q: int) -> BraidWord:
    """Positive word equal to (s1 s2)^q with few syllables (q >= 1)."""
    if q < 1:
        raise ValueError("norm_form needs q >= 1")
    explicit = {
        1: [(1, 1), (2, 1)],
        2: [(1, 2), (2, 1), (1, 1)],
        3: [(1, 2), (2, 1), (1, 2), (2, 1)],
        4: [(1, 2), (2, 1), (1, 3), (2, 1), (1, 1)],
        5: [(1, 3), (2, 1), (1, 3), (2, 1), (1, 2)],
    }
    if q in explicit:
        return _word(explicit[q])
    n, r = divmod(q, 3)
    head = [(1, 3), (2, 1)]
    if r == 0:
        mid = [(1, 4), (2, 1)] * (n - 2)
        tail = [(1, 3), (2, 1), (1, n + 1), (2, 1)]
    elif r == 1:
        mid = [(1, 4), (2, 1)] * (n - 2)
        tail = [(1, 3), (2, 1), (1, n + 2), (2, 1), (1, 1)]
    else:
        mid = [(1, 4), (2, 1)] * (n - 1)
        tail = [(1, 3), (2, 1), (1, n + 1)]
    return _word(head + mid + tail)


def full_twist(n: int) -> BraidWord:
    """h^n with h = (s1 s2)^3."""
    if n == 0:
        return BraidWord(3, ())
    base = BraidWord.parse("(s1 s2)^3", strands=3)
    return base ** n


# -- the normal-form grammar

ALT, POWER, SPECIAL = "alt", "power", "special"


@dataclass(frozen=True)
class MurasugiForm:
    """h^n A with A alternating (pairs p_i, q_i > 0), a power of s2, or s1^m s2^-1."""

    n: int
    kind: str
    pairs: Tuple[Tuple[int, int], ...] = ()
    m: int = 0

    def __post_init__(self):
        if self.kind == ALT:
            if not self.pairs or any(p <= 0 or q <= 0 for p, q in self.pairs):
                raise ValueError("alternating forms need positive exponent pairs")
        elif self.kind == SPECIAL:
            if self.m not in (-1, -2, -3):
                raise ValueError("special forms need m in {-1, -2, -3}")
        elif self.kind != POWER:
            raise ValueError(f"unknown form class {self.kind!r}")

    @classmethod
    def alt(cls, n, pairs):
        return cls(n, ALT, tuple((int(p), int(q)) for p, q in pairs))

    @classmethod
    def power(cls, n, m):
        return cls(n, POWER, (), int(m))

    @classmethod
    def special(cls, n, m):
        return cls(n, SPECIAL, (), int(m))

    @property
    def a(self) -> int:
        return sum(p for p, _ in self.pairs)

    @property
    def b(self) -> int:
        return sum(q for _, q in self.pairs)

    def tail_syllables(self) -> list:
        if self.kind == ALT:
            out = []
            for p, q in self.pairs:
                out += [(1, p), (2, -q)]
            return out
        if self.kind == POWER:
            return [(2, self.m)] if self.m else []
        return [(1, self.m), (2, -1)]

    def tail(self) -> BraidWord:
        return _word(self.tail_syllables())

    def to_word(self) -> BraidWord:
        return full_twist(self.n) * self.tail()

    def diagram(self) -> LinkDiagram:
        w = self.to_word()
        if not w.letters:
            return LinkDiagram.unknot(3)
        return closure(w)

    def has_cancellation(self) -> bool:
        if self.n == 0:
            return False
        s = 1 if self.n > 0 else -1
        return any(e * s < 0 for _, e in self.tail_syllables())

    def __str__(self):
        tail = str(self.tail()) if self.tail().letters else ""
        if self.n == 0:
            return tail or "h^0"
        head = f"h^{self.n}"
        return f"{head} * {tail}" if tail else head

    def to_json(self) -> dict:
        out = {"form": str(self), "n": self.n, "class": self.kind}
        if self.kind == ALT:
            out["pairs"] = [list(p) for p in self.pairs]
        else:
            out["m"] = self.m
        return out

    @classmethod
    def parse(cls, text: str) -> "MurasugiForm":
        """Parse ``h^2 * s1^3 s2^-1``, ``h^-1 * s2^4``, ``h^2`` or a bare tail."""
        s = text.strip()
        n = 0
        m = re.match(r"^h(?:\^\(?(-?\d+)\)?)?\s*(?:\*\s*)?", s)
        if m and m.group(0):
            n = int(m.group(1)) if m.group(1) is not None else 1
            s = s[m.end():]
        s = s.strip()
        tail = BraidWord.parse(s, strands=3) if s else BraidWord(3, ())
        return cls.from_tail(n, tail)

    @classmethod
    def from_tail(cls, n: int, tail: BraidWord) -> "MurasugiForm":
        syl = tail.syllables()
        if not syl:
            return cls.power(n, 0)
        if len(syl) == 1 and syl[0][0] == 2:
            return cls.power(n, syl[0][1])
        if len(syl) == 2 and syl[0][0] == 1 and syl[1] == (2, -1) and syl[0][1] in (-1, -2, -3):
            return cls.special(n, syl[0][1])
        if len(syl) % 2 == 0:
            pairs = []
            ok = True
            for k in range(0, len(syl), 2):
                (g1, e1), (g2, e2) = syl[k], syl[k + 1]
                if g1 != 1 or g2 != 2 or e1 <= 0 or e2 >= 0:
                    ok = False
                    break
                pairs.append((e1, -e2))
            if ok:
                return cls.alt(n, pairs)
        raise ValueError(f"{tail} is not one of the three normal-form tails")


def free_reduce(w: BraidWord, cyclic: bool = False) -> BraidWord:
    """Cancel adjacent inverse letters (also across the ends with ``cyclic``)."""
    out = []
    for g, e in w.letters:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    if cyclic:
        while len(out) > 1 and out[0] == (out[-1][0], -out[-1][1]):
            out = out[1:-1]
    return BraidWord(w.strands, tuple(out))


def destabilize(w: BraidWord) -> BraidWord:
    """Markov destabilisation of a 3-braid with a single letter of one generator.

    Conjugating that letter to the end leaves a word in s1 only (after
    renaming s2 to s1 when s1 is the lone letter), so the closure is that of
    a 2-braid.
    """
    if w.strands != 3:
        return w
    for g in (1, 2):
        idx = [k for k, (h, _) in enumerate(w.letters) if h == g]
        if len(idx) == 1:
            k = idx[0]
            rest = w.letters[k + 1:] + w.letters[:k]
            return BraidWord(2, tuple((1, e) for _, e in rest))
    return w


def simplest_diagram(w: BraidWord) -> LinkDiagram:
    """Closure of ``w`` after cyclic cancellation and destabilisation."""
    w = free_reduce(w, cyclic=True)
    if w.strands == 3:
        w = destabilize(w)
    if w.strands == 2:
        w = free_reduce(w, cyclic=True)
        if len(w) == 1:
            return LinkDiagram.unknot(1)
    if not w.letters:
        return LinkDiagram.unknot(w.strands)
    return closure(w)


def isotopic_diagrams(f: "MurasugiForm") -> list:
    """Distinct diagrams of the closure of ``f`` built from Burau-checked words."""
    seen, out = set(), []
    for w in equivalent_words(f):
        D = simplest_diagram(w)
        key = D.canonical_key()
        if key not in seen:
            seen.add(key)
            out.append(D)
    return out


def _interval(lo, hi) -> ThicknessInterval:
    return ThicknessInterval(lo, hi)


def predicted_thickness(f: MurasugiForm) -> Optional[ThicknessInterval]:
    """Closed-form [delta_min, delta_max]; ``None`` for n = 0 (compute directly)."""
    n = f.n
    if n == 0:
        return None
    if f.kind == ALT:
        a, b = f.a, f.b
        if n > 0:
            return _interval(4 * n + a - b - 1, 6 * n + a - b - 1)
        return _interval(6 * n + a - b + 1, 4 * n + a - b + 1)
    if f.kind == SPECIAL:
        m = f.m
        if n > 0:
            return _interval(4 * n + m - 2, 6 * n + m - 2)
        return _interval(6 * n + m, 4 * n + m + 2)
    m = f.m
    if n > 0 and m >= 0:
        return _interval(4 * n + m - 3, 6 * n + m - 1)
    if n < 0 and m <= 0:
        return _interval(6 * n + m + 1, 4 * n + m + 3)
    if n == 1 and m < -3:
        return _interval(m + 3, m + 7)
    if n == -1 and m > 3:
        return _interval(m - 7, m - 3)
    if n > 0:
        return _interval(4 * n + m - 1, 6 * n + m - 1)
    return _interval(6 * n + m + 1, 4 * n + m + 1)


def is_exceptional(f: MurasugiForm) -> bool:
    """The h^{+-1} s2^{-+m}, m > 3 family."""
    return f.kind == POWER and ((f.n == 1 and f.m < -3) or (f.n == -1 and f.m > 3))


def predicted_width(f: MurasugiForm) -> Optional[int]:
    if f.n == 0:
        return None
    if not f.has_cancellation() or is_exceptional(f):
        return abs(f.n) + 2
    return abs(f.n) + 1


def predicted_qa(f: MurasugiForm) -> bool:
    n = f.n
    if f.kind == ALT:
        return n in (-1, 0, 1)
    if f.kind == POWER:
        return (n == 1 and f.m in (-1, -2, -3)) or (n == -1 and f.m in (1, 2, 3))
    return n in (0, 1)


def predicted_turaev(f: MurasugiForm) -> Optional[Tuple[int, int]]:
    """(lower, upper) bounds on the Turaev genus; ``None`` for n = 0."""
    n = f.n
    if n == 0:
        return None
    k = abs(n)
    if f.kind == ALT:
        return (k - 1, k)
    if f.kind == SPECIAL:
        return (n - 1, n - 1) if n > 0 else (k, k)
    if not f.has_cancellation():
        return (k, k)
    if k > 1:
        return (k - 1, k)
    if is_exceptional(f):
        return (1, 1)
    return (0, 0)


def predicted_report(f: MurasugiForm) -> dict:
    th = predicted_thickness(f)
    tg = predicted_turaev(f)
    return {
        "form": str(f),
        "predicted": {
            "thickness": th.as_tuple() if th else None,
            "width": predicted_width(f),
            "qa": predicted_qa(f),
            "turaev": list(tg) if tg else None,
        },
    }


def torus_thickness(q: int, mirror: bool = False) -> ThicknessInterval:
    """Integral thickness of T(3, q); negative q or ``mirror`` give the mirror image."""
    if abs(q) < 2:
        raise ValueError("torus_thickness needs |q| >= 2")
    flip = (q < 0) != bool(mirror)
    n, r = divmod(abs(q), 3)
    lo, hi = {0: (4 * n - 3, 6 * n - 1), 1: (4 * n - 1, 6 * n + 1), 2: (4 * n + 1, 6 * n + 3)}[r]
    return _interval(-hi, -lo) if flip else _interval(lo, hi)


def torus_word(q: int) -> BraidWord:
    """(s1 s2)^q, the standard T(3, q) braid; q < 0 gives the mirror."""
    if q == 0:
        raise ValueError("q must be nonzero")
    return BraidWord.parse("s1 s2", strands=3) ** q


def grid_forms(n_values=(-2, -1, 1, 2), max_ab: int = 3, max_pairs: int = 2,
               max_m: int = 5) -> list:
    """The sampled normal-form grid."""
    forms = []

    def compositions(total_max, parts):
        if parts == 0:
            yield ()
            return
        for first in range(1, total_max - parts + 2):
            for rest in compositions(total_max - first, parts - 1):
                yield (first,) + rest

    for n in n_values:
        for k in range(1, max_pairs + 1):
            for ps in compositions(max_ab, k):
                for qs in compositions(max_ab, k):
                    forms.append(MurasugiForm.alt(n, list(zip(ps, qs))))
        for m in range(-max_m, max_m + 1):
            forms.append(MurasugiForm.power(n, m))
        for m in (-1, -2, -3):
            forms.append(MurasugiForm.special(n, m))
    return forms


def _swap(word: BraidWord) -> BraidWord:
    return BraidWord(3, tuple((3 - g, e) for g, e in word.letters))


def _twist_head(k: int, first: int, sgn: int) -> list:
    """Words equal to u^k where u = s_first s_other (inverted letters if sgn < 0)."""
    other = 3 - first
    unit = BraidWord(3, ((first, sgn), (other, sgn)))
    heads = [unit ** k]
    if k >= 2:
        nf = norm_form(k)
        if first == 2:
            nf = _swap(nf)
        if sgn < 0:
            nf = nf.mirror()
        heads.append(nf)
    return heads


def equivalent_words(f: MurasugiForm) -> list:
    """Words whose closures are isotopic to the closure of ``f``.

    Every candidate is checked against a conjugate of ``f.to_word()`` with the
    Burau oracle, so callers may rely on it.
    """
    base = f.to_word()
    out = [base]
    n = f.n
    if n == 0:
        return out
    sgn = 1 if n > 0 else -1
    k = 3 * abs(n)
    for first in (1, 2):
        for head in _twist_head(k, first, sgn):
            cand = head * f.tail()
            if not braids_equal(cand, base):
                raise AssertionError("full-twist rewrite failed the Burau check")
            out.append(cand)
    # absorb one cancelling letter into the twist:
    # (s_a s_b)^k s_b^-1 = (s_a s_b)^(k-1) s_a, and the mirror identity
    letters = list(f.tail().letters)
    for idx, (g, e) in enumerate(letters):
        if e != -sgn:
            continue
        rotated = letters[idx + 1:] + letters[:idx]
        conj = BraidWord(3, tuple(letters[:idx]))
        target = conj.inverse() * base * conj
        first = 3 - g
        blocks = [h * BraidWord(3, ((first, sgn),)) for h in _twist_head(k - 1, first, sgn)]
        if k - 1 == 2:
            # (s_a s_b)^2 s_a = s_a^2 s_b s_a^2
            blocks.append(_word([(first, 2 * sgn), (3 - first, sgn), (first, 2 * sgn)]))
        for block in blocks:
            cand = block * BraidWord(3, tuple(rotated))
            if not braids_equal(cand, target):
                raise AssertionError("absorption identity failed the Burau check")
            out.append(cand)
    unique = []
    for w in out:
        if w not in unique:
            unique.append(w)
    return unique
