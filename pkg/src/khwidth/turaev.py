"""Turaev surface genus of diagrams and genus bounds for closed 3-braids."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .braid3 import destabilize, free_reduce
from .diagram import BraidWord, DiagramError, LinkDiagram, closure


# Every link admitting a diagram with at most this many crossings is
# alternating (the first non-alternating links in the tables have six).
SMALL_CROSSING_ALTERNATING = 5


@dataclass(frozen=True)
class TuraevReport:
    c: int
    s0: int
    s1: int
    genus: int

    def to_json(self) -> dict:
        return {"c": self.c, "s0": self.s0, "s1": self.s1, "genus": self.genus}


def turaev_genus_of_diagram(D: LinkDiagram) -> TuraevReport:
    """Genus (2 - s0 - s1 + c)/2 of the Turaev surface of a connected diagram."""
    if not D.is_connected():
        raise DiagramError("the Turaev surface formula needs a connected diagram")
    c = D.num_crossings
    s0 = D.count_state_circles([0] * c)
    s1 = D.count_state_circles([1] * c)
    twice = 2 - s0 - s1 + c
    if twice < 0 or twice % 2:
        raise AssertionError(f"impossible state counts c={c}, s0={s0}, s1={s1}")
    return TuraevReport(c, s0, s1, twice // 2)


def collapse_syllables(w: BraidWord, cyclic: bool = False) -> BraidWord:
    """Replace each maximal run s_i^k by s_i^sign(k).

    With ``cyclic`` the first and last runs are merged when they match, which
    is still a run in the closed braid.
    """
    syl = w.syllables()
    if cyclic and len(syl) > 1 and syl[0][0] == syl[-1][0] and (syl[0][1] > 0) == (syl[-1][1] > 0):
        syl = syl[:-1]
    return BraidWord(w.strands, tuple((g, 1 if k > 0 else -1) for g, k in syl))


def braid_closure_genus(w: BraidWord) -> int:
    """Turaev genus of the closure of ``w`` after cancellation, destabilisation
    and cyclic collapse."""
    w = collapse_syllables(destabilize(free_reduce(w, cyclic=True)), cyclic=True)
    if not w.letters:
        return 0
    return turaev_genus_of_diagram(closure(w)).genus


def _three_letter_moves() -> dict:
    """Pairs of equal length-3 words s_i s_j s_i = s_j s_i s_j in every sign pattern."""
    from itertools import product

    from .braid3 import braids_equal

    words = [((i, a), (j, b), (i, c)) for i, j in ((1, 2), (2, 1))
             for a, b, c in product((1, -1), repeat=3)]
    moves = {}
    for x in words:
        for y in words:
            if x != y and braids_equal(BraidWord(3, x), BraidWord(3, y)):
                moves.setdefault(x, []).append(y)
    return moves


_MOVES = None


def _rotations(letters: tuple):
    return [letters[k:] + letters[:k] for k in range(len(letters))]


def search_genus(w: BraidWord, max_states: int = 400) -> tuple:
    """Best closure genus over words reachable by cyclic three-letter braid moves.

    Every move is a Burau-checked identity, so each visited word closes to
    the same link.  Returns ``(genus, word)``.
    """
    global _MOVES
    if _MOVES is None:
        _MOVES = _three_letter_moves()
    start = free_reduce(w, cyclic=True).letters
    if not start:
        return 0, BraidWord(3, ())
    seen = {min(_rotations(start))}
    queue = [start]
    best = (braid_closure_genus(BraidWord(3, start)), BraidWord(3, start))
    while queue and len(seen) < max_states and best[0] > 0:
        cur = queue.pop(0)
        n = len(cur)
        for k in range(n):
            rot = cur[k:] + cur[:k]
            for y in _MOVES.get(rot[:3], ()):
                nxt = free_reduce(BraidWord(3, y + rot[3:]), cyclic=True).letters
                key = min(_rotations(nxt)) if nxt else ()
                if key in seen:
                    continue
                seen.add(key)
                queue.append(nxt)
                g = braid_closure_genus(BraidWord(3, nxt))
                if g < best[0]:
                    best = (g, BraidWord(3, nxt))
    return best


@dataclass(frozen=True)
class TuraevBounds:
    lower: int
    upper: int
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "witness": self.witness}


def form_genus_upper(form, max_states: int = 0) -> tuple:
    """Smallest Turaev genus over Burau-checked diagrams of a 3-braid form.

    A word of at most five letters closes to an alternating link and scores 0.
    Returns ``(genus, word)``.
    """
    from .braid3 import equivalent_words

    best = None
    for w in equivalent_words(form):
        if len(free_reduce(w, cyclic=True)) <= SMALL_CROSSING_ALTERNATING:
            return 0, w
        g, v = search_genus(w, max_states) if max_states else (braid_closure_genus(w), w)
        if best is None or g < best[0]:
            best = (g, v)
    return best


def turaev_bounds(width: int, upper: int, alternating: bool = False, witness=None) -> TuraevBounds:
    """Interval for g_T from the Khovanov width (lower) and a constructed diagram (upper)."""
    lower = max(width - 2, 0)
    if alternating:
        upper = 0
    if lower > upper:
        raise AssertionError(f"width bound {lower} exceeds diagram genus {upper}")
    return TuraevBounds(lower, upper, witness)


def torus_turaev_genus(q: int, certify: bool = True) -> int:
    """Turaev genus of T(3, q), certified by a diagram and the width bound."""
    from .braid3 import norm_form

    if abs(q) < 2:
        raise ValueError("torus_turaev_genus needs |q| >= 2")
    w = norm_form(abs(q))
    if q < 0:
        w = w.mirror()
    upper = braid_closure_genus(w)
    expected = abs(q) // 3
    if upper != expected:
        raise AssertionError(f"norm form diagram has genus {upper}, expected {expected}")
    if certify:
        from .homology import homology

        lower = homology(closure(w)).thickness().width - 2
        if lower != upper:
            raise AssertionError(f"width bound {lower} does not meet diagram genus {upper}")
    return upper
