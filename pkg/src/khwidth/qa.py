"""Quasi-alternating certificates by determinant recursion, and a Khovanov obstruction."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .classical import determinant, signature
from .diagram import LinkDiagram
from .homology import DEFAULT_BUDGET, reduced_homology

UNKNOT, ALTERNATING = "unknot", "alternating-base"


def _leaf_kind(D: LinkDiagram) -> Optional[str]:
    S = D.simplify()
    if S.num_crossings == 0 and S.free_loops == 1:
        return UNKNOT
    if S.num_crossings and S.is_reduced_alternating():
        return ALTERNATING
    return None


@dataclass
class QAResult:
    status: str  # "certified" or "unknown"
    certificate: Optional[dict] = None
    explored: int = 0

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {"status": self.status, "explored": self.explored, "certificate": self.certificate}


class _Search:
    def __init__(self):
        self.memo = {}
        self.det_cache = {}
        self.explored = 0

    def det(self, D):
        key = D.canonical_key()
        if key not in self.det_cache:
            self.det_cache[key] = determinant(D)
        return self.det_cache[key]

    def run(self, D: LinkDiagram, depth: int) -> Optional[dict]:
        D = D.simplify()
        key = D.canonical_key()
        hit = self.memo.get(key)
        if hit is not None:
            cert, tried = hit
            if cert is not None or tried >= depth:
                return cert
        self.explored += 1
        d = self.det(D)
        cert = None
        if d > 0:
            kind = _leaf_kind(D)
            if kind:
                cert = {"diagram": D.to_json(), "det": d, "leaf": kind}
            elif depth > 0:
                cert = self._branch(D, d, depth)
        self.memo[key] = (cert, depth)
        return cert

    def _branch(self, D, d, depth):
        options = []
        for k in range(D.num_crossings):
            L0, L1 = D.smooth(k, 0), D.smooth(k, 1)
            d0, d1 = self.det(L0), self.det(L1)
            if d0 > 0 and d1 > 0 and d0 + d1 == d:
                options.append((-(d0 * d1), k, L0, L1, d0, d1))
        options.sort(key=lambda t: (t[0], t[1]))
        for _, k, L0, L1, d0, d1 in options:
            c0 = self.run(L0, depth - 1)
            if c0 is None:
                continue
            c1 = self.run(L1, depth - 1)
            if c1 is None:
                continue
            return {"diagram": D.to_json(), "det": d, "crossing": k,
                    "dets": [d, d0, d1], "children": [c0, c1]}
        return None


def qa_search(D: LinkDiagram, depth: int = 6, alternatives=()) -> QAResult:
    """Look for a quasi-alternating certificate; ``unknown`` never means "not QA".

    ``alternatives`` are further diagrams of the same link, tried in order
    when ``D`` itself yields nothing.
    """
    s = _Search()
    cert = None
    for E in (D, *alternatives):
        cert = s.run(E, depth)
        if cert is not None:
            break
    if cert is None:
        return QAResult("unknown", None, s.explored)
    if not validate_certificate(cert):
        raise AssertionError("search produced an invalid certificate")
    return QAResult("certified", cert, s.explored)


def validate_certificate(cert: dict) -> bool:
    """Recheck every node from scratch: leaves, smoothings and determinant sums."""
    D = LinkDiagram.from_json(cert["diagram"])
    d = determinant(D)
    if d != cert["det"] or d <= 0:
        return False
    if "leaf" in cert:
        return _leaf_kind(D) == cert["leaf"]
    k = cert["crossing"]
    if not 0 <= k < D.num_crossings:
        return False
    kids = cert["children"]
    for choice, child in zip((0, 1), kids):
        expected = D.smooth(k, choice).simplify().canonical_key()
        if LinkDiagram.from_json(child["diagram"]).canonical_key() != expected:
            return False
    d0, d1 = kids[0]["det"], kids[1]["det"]
    if cert["dets"] != [d, d0, d1] or d0 + d1 != d:
        return False
    return all(validate_certificate(c) for c in kids)


def qa_search_form(form, depth: int = 6) -> QAResult:
    """qa_search over every Burau-checked diagram of a closed 3-braid normal form."""
    from .braid3 import isotopic_diagrams

    diagrams = isotopic_diagrams(form)
    return qa_search(diagrams[0], depth, diagrams[1:])


def certificate_size(cert: dict) -> int:
    if "leaf" in cert:
        return 1
    return 1 + sum(certificate_size(c) for c in cert["children"])


@dataclass
class Obstruction:
    verdict: str  # "not-qa" or "inconclusive"
    reason: str
    reduced_thickness: Optional[tuple]
    minus_signature: Optional[int]

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason,
                "reduced_thickness": self.reduced_thickness,
                "minus_signature": self.minus_signature}


def qa_obstruction(D: LinkDiagram, budget: int = DEFAULT_BUDGET) -> Obstruction:
    """NotQA when reduced homology is not a single torsion-free diagonal at -signature."""
    if D.num_crossings == 0:
        bp = None
    else:
        bp = D.basepoint if D.basepoint is not None else min(D.edges())
    H = reduced_homology(D, "Z", budget, basepoint=bp)
    th = H.thickness()
    if th.width > 1:
        return Obstruction("not-qa", f"reduced width {th.width} > 1", th.as_tuple(), None)
    if H.torsion_part():
        return Obstruction("not-qa", "reduced homology has torsion", th.as_tuple(), None)
    if not D.is_connected():
        return Obstruction("not-qa", "split diagram", th.as_tuple(), None)
    ms = -signature(D)
    if th.delta_min != ms:
        return Obstruction("not-qa", f"reduced homology sits at delta {th.delta_min}, not {ms}",
                           th.as_tuple(), ms)
    return Obstruction("inconclusive", "thin at delta = -signature", th.as_tuple(), ms)


def certificate_json(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True)
