"""Small named corpus of knots and links used by the verification suites."""
from __future__ import annotations

from .diagram import LinkDiagram, parse_diagram

# name -> diagram text accepted by ``parse_diagram``
CORPUS = {
    "unknot-r1": "braid:s1",
    "3_1": "braid:s1^3",
    "4_1": "braid:s1 s2^-1 s1 s2^-1",
    "5_1": "braid:s1^5",
    "5_2": "braid:s1^3 s2 s1^-1 s2",
    "6_1": "braid:s1^2 s2 s1^-1 s3^-1 s2 s3^-1",
    "6_2": "braid:s1^3 s2^-1 s1 s2^-1",
    "6_3": "braid:s1^2 s2^-1 s1 s2^-2",
    "7_1": "braid:s1^7",
    "8_19": "braid:s1^3 s2 s1^3 s2",
    "8_20": "braid:s1^3 s2^-1 s1^-3 s2^-1",
    "hopf": "braid:s1^2",
    "L4a1": "braid:s1^4",
    "whitehead": "pd:X[6,1,7,2], X[10,7,5,8], X[4,5,1,6], X[2,10,3,9], X[8,4,9,3]",
    "borromean": "braid:(s1 s2^-1)^3",
    "L6n1": "braid:(s1 s2)^3 s2^-4",
}


def corpus(max_crossings: int = 99) -> dict:
    out = {}
    for name, text in CORPUS.items():
        D = parse_diagram(text)
        if D.num_crossings <= max_crossings:
            out[name] = D
    return out


def get(name: str) -> LinkDiagram:
    return parse_diagram(CORPUS[name])
