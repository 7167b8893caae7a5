"""Rational tangle replacement at a crossing and the width statements about it.

Tangle geometry.  A crossing ``X[a,b,c,d]`` is placed in a square with
corners SW, SE, NE, NW.  In the frame used for a tangle whose last term is
positive the corners are ``(a, b, c, d)``; for a negative last term the
frame is turned a quarter so the corners are ``(d, a, b, c)``.  Terms are
laid out alternately vertically and horizontally, ending with a horizontal
row whose rightmost crossing sits where ``x`` was and keeps its index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Optional

from .diagram import DiagramError, LinkDiagram
from .homology import BudgetError, DEFAULT_BUDGET, homology
from .homology.groups import BigradedGroups, ThicknessInterval


@dataclass(frozen=True)
class RationalTangle:
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a rational tangle needs at least one term")
        if any(int(a) != a or a == 0 for a in self.terms):
            raise ValueError(f"degenerate tangle terms {self.terms}")
        object.__setattr__(self, "terms", tuple(int(a) for a in self.terms))

    @classmethod
    def parse(cls, text: str) -> "RationalTangle":
        s = text.strip().removeprefix("C(").removesuffix(")")
        return cls(tuple(int(t) for t in s.replace(" ", "").split(",") if t))

    @property
    def alternating(self) -> bool:
        return all(a > 0 for a in self.terms) or all(a < 0 for a in self.terms)

    @property
    def crossings(self) -> int:
        return sum(abs(a) for a in self.terms)

    def canonical(self) -> "RationalTangle":
        """Fold a leading +-1 into the next term: C(1, a2, ...) = C(a2 + 1, ...)."""
        t = list(self.terms)
        while len(t) > 1 and abs(t[0]) == 1 and (t[0] > 0) == (t[1] > 0):
            t = [t[1] + t[0]] + t[2:]
        return RationalTangle(tuple(t))

    def __str__(self):
        return "C(" + ",".join(map(str, self.terms)) + ")"


def _crossing(kind: int, sw, se, ne, nw) -> tuple:
    # under-strand SW-NE for kind +1, SE-NW for kind -1
    return (sw, se, ne, nw) if kind > 0 else (se, ne, nw, sw)


def _tangle(terms, fresh) -> tuple:
    """Crossings of C(terms) with ports named 'NW','NE','SW','SE'; final crossing first."""
    m = len(terms)
    horizontal_first = (m - 1) % 2 == 0
    a, b = next(fresh), next(fresh)
    if horizontal_first:
        ports = {"NW": a, "NE": a, "SW": b, "SE": b}
    else:
        ports = {"NW": a, "SW": a, "NE": b, "SE": b}
    crossings = []
    for i, t in enumerate(terms):
        horizontal = (m - 1 - i) % 2 == 0
        kind = 1 if t > 0 else -1
        for _ in range(abs(t)):
            n1, n2 = next(fresh), next(fresh)
            if horizontal:
                crossings.append(_crossing(kind, ports["SE"], n2, n1, ports["NE"]))
                ports["NE"], ports["SE"] = n1, n2
            else:
                crossings.append(_crossing(kind, ports["NW"], ports["NE"], n2, n1))
                ports["NW"], ports["NE"] = n1, n2
    crossings.reverse()
    return crossings, ports


def crossing_change(D: LinkDiagram, x: int) -> LinkDiagram:
    """Switch over and under at crossing ``x``."""
    _check_index(D, x)
    a, b, c, d = D.crossings[x]
    crossings = list(D.crossings)
    crossings[x] = (b, c, d, a)
    heads = set()
    for k, p in D.head_slots():
        heads.add((k, (p - 1) % 4) if k == x else (k, p))
    return LinkDiagram.from_geometry(crossings, heads, D.free_loops, D.basepoint)


def _check_index(D, x):
    if not 0 <= x < D.num_crossings:
        raise DiagramError(f"no crossing {x}")


def twist(D: LinkDiagram, x: int, tau) -> LinkDiagram:
    """``D`` with crossing ``x`` replaced by the rational tangle ``tau``."""
    if not isinstance(tau, RationalTangle):
        tau = RationalTangle(tuple(tau))
    _check_index(D, x)
    slot_of = {"SW": 0, "SE": 1, "NE": 2, "NW": 3} if tau.terms[-1] > 0 else \
        {"SW": 3, "SE": 0, "NE": 1, "NW": 2}
    corner = {k: D.crossings[x][p] for k, p in slot_of.items()}
    fresh = count(max(D.edges()) + 1)
    inserted, ports = _tangle(tau.terms, fresh)
    index = lambda i: x if i == 0 else D.num_crossings + i - 1
    # where each port edge meets the tangle, before renaming to the corner edges
    port_slot = {name: next((index(i), q) for i, y in enumerate(inserted)
                            for q, e in enumerate(y) if e == ports[name]) for name in ports}
    rename = {ports[k]: corner[k] for k in ports}
    inserted = [tuple(rename.get(e, e) for e in y) for y in inserted]
    crossings = list(D.crossings)
    crossings[x] = inserted[0]
    crossings.extend(inserted[1:])
    heads = {(k, p) for k, p in D.head_slots() if k != x}
    out = LinkDiagram.from_geometry(crossings, heads, D.free_loops, D.basepoint)
    # components meeting no other crossing keep the direction they had through x
    old_heads = D.head_slots()
    unhinted = [set(c) for c in out.components
                if not any(crossings[k][p] in c for k, p in heads)]
    extra = {port_slot[n] for n, p in slot_of.items() if (x, p) in old_heads
             and any(corner[n] in c for c in unhinted)}
    if not extra:
        return out
    return LinkDiagram.from_geometry(crossings, heads | extra, D.free_loops, D.basepoint)


def band_twist(D: LinkDiagram, x: int, n: int) -> LinkDiagram:
    """Replace ``x`` by |n| coherently oriented half twists of sign sign(n).

    n = 1 gives D_+ and n = -1 gives D_- at ``x``.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    Dp = D if D.signs[x] > 0 else crossing_change(D, x)
    base = Dp if n > 0 else crossing_change(Dp, x)
    return twist(base, x, RationalTangle((n,)))


def resolutions(D: LinkDiagram, x: int) -> tuple:
    """(D_v, D_h): the oriented and the unoriented smoothing at ``x``."""
    _check_index(D, x)
    oriented = 0 if D.signs[x] > 0 else 1
    return D.smooth(x, oriented), D.smooth(x, 1 - oriented)


def shift_e(D: LinkDiagram, x: int, D_h: Optional[LinkDiagram] = None) -> int:
    """e = neg(D_h) - neg(D_+)."""
    if D_h is None:
        D_h = resolutions(D, x)[1]
    neg_plus = D.neg() - (1 if D.signs[x] < 0 else 0)
    return D_h.neg() - neg_plus


@dataclass
class WidthPreservingReport:
    sign: int
    v_min: int
    v_max: int
    h_min: int
    h_max: int
    e: int
    verdict: bool
    fired: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"sign": self.sign, "v": [self.v_min, self.v_max], "h": [self.h_min, self.h_max],
                "e": self.e, "preserving": self.verdict, "fired": self.fired}


def _preserving(sign, v: ThicknessInterval, h: ThicknessInterval, e: int):
    off = 1 if sign > 0 else -1
    fired = []
    if v.delta_min == h.delta_min + e + off:
        fired.append(f"v_min = h_min + e {'+' if off > 0 else '-'} 1")
    if v.delta_max == h.delta_max + e + off:
        fired.append(f"v_max = h_max + e {'+' if off > 0 else '-'} 1")
    return not fired, fired


def width_preserving(D: LinkDiagram, x: int, ring="Z", budget: int = DEFAULT_BUDGET,
                     _groups=None) -> WidthPreservingReport:
    """Evaluate the width-preserving condition at ``x`` from computed homology."""
    Dv, Dh = resolutions(D, x)
    Hv, Hh = _groups if _groups else (homology(Dv, ring, budget), homology(Dh, ring, budget))
    v, h = Hv.thickness(), Hh.thickness()
    e = shift_e(D, x, Dh)
    verdict, fired = _preserving(D.signs[x], v, h, e)
    return WidthPreservingReport(D.signs[x], v.delta_min, v.delta_max, h.delta_min,
                                 h.delta_max, e, verdict, fired)


def staged_twists(D: LinkDiagram, x: int, tau: RationalTangle) -> list:
    """Diagrams reaching ``D`` twisted by an alternating ``tau`` one C(+-2) step at a time.

    Row ``m`` is grown first by doubling along the row; doubling across the
    row then opens the next row inwards.  The last diagram is isotopic to
    ``twist(D, x, tau)`` (flypes move the doubled crossing inside a row).
    Returns ``[(label, diagram), ...]`` starting with ``D``.
    """
    if not tau.alternating:
        raise ValueError("staged replay needs an alternating tangle")
    tau = tau.canonical()
    terms = tau.terms
    s = 1 if terms[0] > 0 else -1
    m = len(terms)
    along_last = RationalTangle((2 * s,))
    across_last = RationalTangle((-2 * s,))
    stages = [("D", D)]
    cur, y = D, x
    for i in range(m - 1, -1, -1):
        horizontal = (m - 1 - i) % 2 == 0
        along, across = (along_last, across_last) if horizontal else (across_last, along_last)
        have = 1 if i == m - 1 else 2
        want = abs(terms[i]) + (1 if i > 0 else 0)
        for _ in range(want - have):
            cur = twist(cur, y, along)
            stages.append((f"{along} at crossing {y}", cur))
        if i > 0:
            cur = twist(cur, y, across)
            stages.append((f"{across} at crossing {y}", cur))
    return stages


def equal_up_to_orientation(H1: BigradedGroups, H2: BigradedGroups) -> bool:
    """Equality up to the (s, 3s) shift caused by reversing components."""
    if H1.is_zero() or H2.is_zero():
        return H1 == H2
    s = min(i for i, _ in H1.entries) - min(i for i, _ in H2.entries)
    return H2.shifted(s, 3 * s) == H1


def _width(H: BigradedGroups) -> int:
    return H.thickness().width


@dataclass
class AltTangleReport:
    tangle: str
    crossing: int
    preserving: WidthPreservingReport
    before: int
    after: Optional[int]
    stages: list
    staged_matches_direct: Optional[bool]
    passed: Optional[bool]
    reason: str = ""

    def to_json(self) -> dict:
        return {"tangle": self.tangle, "crossing": self.crossing, "before": self.before,
                "after": self.after, "preserving": self.preserving.verdict,
                "width_preserving": self.preserving.to_json(), "stages": self.stages,
                "staged_matches_direct": self.staged_matches_direct, "passed": self.passed,
                "reason": self.reason}


def verify_alt_tangle(D: LinkDiagram, x: int, tau, ring="Z", budget: int = DEFAULT_BUDGET,
                      stages: bool = True) -> AltTangleReport:
    """Check w(D) = w(D_tau) for an alternating tangle at a width-preserving crossing.

    ``passed`` is ``None`` when the hypothesis fails; the theorem then says nothing.
    """
    if not isinstance(tau, RationalTangle):
        tau = RationalTangle(tuple(tau))
    if not tau.alternating:
        raise ValueError(f"{tau} is not alternating")
    rep = width_preserving(D, x, ring, budget)
    before = _width(homology(D, ring, budget))
    if not rep.verdict:
        return AltTangleReport(str(tau), x, rep, before, None, [], None, None,
                               "not width-preserving at the crossing")
    Dt = twist(D, x, tau)
    Ht = homology(Dt, ring, budget)
    after = _width(Ht)
    stage_rows = []
    matches = None
    ok = after == before
    if stages:
        seq = staged_twists(D, x, tau)
        for label, Ds in seq[1:]:
            w = _width(homology(Ds, ring, budget))
            stage_rows.append({"step": label, "crossings": Ds.num_crossings, "width": w})
            ok = ok and w == before
        matches = equal_up_to_orientation(Ht, homology(seq[-1][1], ring, budget))
        ok = ok and matches
    return AltTangleReport(str(tau), x, rep, before, after, stage_rows, matches, ok)


def band_prediction(v: ThicknessInterval, h: ThicknessInterval, e: int, n: int) -> ThicknessInterval:
    """Thickness of the n-fold band twist, shifted so n = +-1 recovers the skein bound."""
    s = 1 if n > 0 else -1
    alpha = min(v.delta_min + s, h.delta_min + e)
    beta = max(v.delta_max + s, h.delta_max + e)
    return ThicknessInterval(n - s + alpha, n - s + beta)


@dataclass
class BandReport:
    n: int
    hypotheses: bool
    reason: str
    predicted: Optional[ThicknessInterval]
    observed: Optional[ThicknessInterval]

    @property
    def passed(self) -> Optional[bool]:
        if not self.hypotheses:
            return None
        return self.predicted == self.observed

    def to_json(self) -> dict:
        return {"n": self.n, "hypotheses": self.hypotheses, "reason": self.reason,
                "predicted": self.predicted.as_tuple() if self.predicted else None,
                "observed": self.observed.as_tuple() if self.observed else None,
                "passed": self.passed}


def _band_hypotheses(n, Hv: BigradedGroups, Hh: BigradedGroups, e: int) -> tuple:
    v, h = Hv.thickness(), Hh.thickness()
    if n > 0:
        if v.delta_min == h.delta_min + e + 1:
            return False, "v_min = h_min + e + 1"
        if v.delta_max != h.delta_max + e + 1:
            return True, "generic"
        target, vanish = v.delta_max, (lambda l, j: l <= j - 3 * e - 1)
    else:
        if v.delta_max == h.delta_max + e - 1:
            return False, "v_max = h_max + e - 1"
        if v.delta_min != h.delta_min + e - 1:
            return True, "generic"
        target, vanish = v.delta_min, (lambda l, j: l >= j - 3 * e - 1)
    for i, j in sorted(Hv.entries):
        if j - 2 * i != target:
            continue
        if all(not vanish(l, j) for (_, l) in Hh.entries):
            return True, f"witness Kh^({i},{j})(D_v)"
    return False, "no witness cell for the boundary diagonal"


def verify_band(D: LinkDiagram, x: int, n: int, ring="Z", budget: int = DEFAULT_BUDGET) -> BandReport:
    """Compare the band-twist thickness with the closed-form prediction."""
    if n == 0:
        raise ValueError("n must be nonzero")
    Dp = D if D.signs[x] > 0 else crossing_change(D, x)
    Dv, Dh = resolutions(Dp, x)
    Hv, Hh = homology(Dv, ring, budget), homology(Dh, ring, budget)
    e = shift_e(Dp, x, Dh)
    ok, reason = _band_hypotheses(n, Hv, Hh, e)
    if not ok:
        return BandReport(n, False, reason, None, None)
    pred = band_prediction(Hv.thickness(), Hh.thickness(), e, n)
    observed = homology(band_twist(Dp, x, n), ring, budget).thickness()
    return BandReport(n, True, reason, pred, observed)
