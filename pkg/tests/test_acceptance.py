"""Acceptance criteria 1-8.

Each criterion records a single ``CRITERION n: PASS|FAIL`` line, printed in the
pytest terminal summary (and by ``python tests/test_acceptance.py``).  All
comparisons are exact; the runtime limits are the pinned budgets for one core.
"""
from __future__ import annotations

import time

import pytest

from khwidth.braid3 import (MurasugiForm, grid_forms, predicted_qa, predicted_thickness,
                            predicted_width, torus_word)
from khwidth.classical import signature
from khwidth.diagram import BraidWord, closure
from khwidth.homology import homology, parse_poincare, reduced_homology
from khwidth.qa import qa_obstruction, qa_search, qa_search_form, validate_certificate
from khwidth.suites import run_suite
from khwidth.corpus import get
from khwidth.turaev import form_genus_upper, turaev_genus_of_diagram

RESULTS: dict = {}

# displayed rank polynomials, copied verbatim
P_T35 = ("q^7+q^9+q^{11}t^2+q^{15}t^3+q^{13}t^4+q^{15}t^4+q^{17}t^5+q^{17}t^6"
         "+q^{19}t^5+q^{21}t^7")
P_T36 = ("q^9+q^{11}+q^{13}t^2+q^{17}t^3+q^{15}t^4+q^{17}t^4+q^{19}t^5+q^{19}t^6"
         "+q^{21}t^7+q^{21}t^8+q^{23}t^7+3q^{23}t^8+2q^{25}t^8")
P_L6N1 = "2q^{-1}+3q+q^3+qt+q^5t^2+q^7t^4+q^9t^4"

# Integral thickness of T(3, q), transcribed as a literal table
TORUS_TABLE = {
    3: (1, 5), -3: (-5, -1), 4: (3, 7), -4: (-7, -3), 5: (5, 9), -5: (-9, -5),
    6: (5, 11), -6: (-11, -5), 7: (7, 13), -7: (-13, -7), 8: (9, 15), -8: (-15, -9),
}

LIMIT_POLY = 120.0
LIMIT_TORUS = 600.0
LIMIT_GRID = 7200.0
LIMIT_TWIST = 1800.0
LIMIT_QA = 3600.0


def record(n: int, ok: bool, detail: str):
    RESULTS[n] = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"


def _poly(text):
    return parse_poincare(text.replace("{", "").replace("}", ""))


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


B3 = lambda text: closure(BraidWord.parse(text, strands=3))


# -- 1

def _criterion1():
    rows = []
    for name, word, text in (("T(3,5)", "(s1 s2)^5", P_T35), ("T(3,6)", "(s1 s2)^6", P_T36),
                             ("L6n1", "(s1 s2)^3 s2^-4", P_L6N1)):
        H, dt = _timed(lambda: homology(B3(word), "Q"))
        rows.append((name, H == _poly(text), dt, H))
    return rows


@pytest.fixture(scope="module")
def criterion1():
    rows = _criterion1()
    ok = all(match and dt < LIMIT_POLY for _, match, dt, _ in rows)
    detail = "; ".join(f"{n} {'match' if m else 'MISMATCH'} ({dt:.1f}s)" for n, m, dt, _ in rows)
    record(1, ok, detail)
    return {n: (m, dt, H) for n, m, dt, H in rows}


def test_c1_t35_exact(criterion1):
    match, dt, _ = criterion1["T(3,5)"]
    assert match and dt < LIMIT_POLY


def test_c1_l6n1_exact(criterion1):
    match, dt, _ = criterion1["L6n1"]
    assert match and dt < LIMIT_POLY


@pytest.mark.xfail(strict=True, reason="displayed P(T(3,6)) has q^21 t^7 where the homology "
                   "has q^21 t^5; see the decisions ledger")
def test_c1_t36_exact(criterion1):
    match, dt, _ = criterion1["T(3,6)"]
    assert match and dt < LIMIT_POLY


@pytest.mark.slow
def test_c1_t36_brute_force_sides_with_computation(criterion1):
    """The computed table differs from the display only by moving q^21 from t^7 to t^5,
    and the full cube computed independently agrees with the computation."""
    from oracles import khovanov_q_oracle

    _, _, H = criterion1["T(3,6)"]
    shown = _poly(P_T36)
    diff = {k: H.rank(*k) - shown.rank(*k) for k in set(H.entries) | set(shown.entries)}
    assert {k: v for k, v in diff.items() if v} == {(5, 21): 1, (7, 21): -1}
    assert khovanov_q_oracle(B3("(s1 s2)^6"), exact=False) == H.ranks()


# -- 2

def test_c2_torus_table():
    rows, dt = _timed(lambda: [(q, homology(closure(torus_word(q))).thickness().as_tuple())
                               for q in sorted(TORUS_TABLE, key=lambda q: (abs(q), -q))])
    bad = [(q, th) for q, th in rows if th != TORUS_TABLE[q]]
    ok = not bad and dt < LIMIT_TORUS
    record(2, ok, f"{len(rows) - len(bad)}/{len(rows)} torus links match ({dt:.1f}s)")
    assert ok, bad


# -- 3

@pytest.fixture(scope="module")
def grid():
    forms = grid_forms()
    out, dt = _timed(lambda: [(f, homology(f.diagram())) for f in forms])
    return out, dt


def test_c3_threebraid_grid(grid):
    rows, dt = grid
    bad = [str(f) for f, H in rows
           if H.thickness() != predicted_thickness(f) or H.thickness().width != predicted_width(f)]
    big = max(f.diagram().num_crossings for f, _ in rows)
    ok = not bad and big <= 20 and dt < LIMIT_GRID
    record(3, ok, f"{len(rows) - len(bad)}/{len(rows)} forms match, max {big} crossings ({dt:.1f}s)")
    assert ok, bad


# -- 4

def test_c4_twisting():
    rows, dt = _timed(lambda: run_suite("twist", seed=0, trials=50))
    preserving = [r for r in rows if r["preserving"]]
    width_ok = all(r["expected"][0] == r["observed"][0] and r["staged"] for r in preserving)
    genus_ok = all(r["expected"][1] == r["observed"][1] for r in rows)
    ok = len(preserving) >= 50 and width_ok and genus_ok and dt < LIMIT_TWIST
    record(4, ok, f"{len(preserving)} width-preserving trials keep width, "
                  f"{sum(r['expected'][1] == r['observed'][1] for r in rows)}/{len(rows)} "
                  f"keep Turaev genus ({dt:.1f}s)")
    assert ok


# -- 5

def test_c5_turaev(grid):
    rows, _ = grid
    fam = [turaev_genus_of_diagram(B3("s1 s2") if s == 1 else closure(BraidWord.parse("s1 s2", 3) ** s)).genus
           for s in range(1, 6)]
    fam_ok = fam == [0, 1, 2, 3, 4]
    gaps = [form_genus_upper(f)[0] - (H.thickness().width - 2) for f, H in rows]
    gap_ok = all(0 <= g <= 1 for g in gaps)
    ok = fam_ok and gap_ok
    record(5, ok, f"torus family genera {fam}; grid gaps in [0,1] for "
                  f"{sum(0 <= g <= 1 for g in gaps)}/{len(gaps)} forms")
    assert ok


# -- 6

def test_c6_axioms():
    rows = run_suite("axioms", seed=0)
    bad = [r["case"] for r in rows if not r["passed"]]
    ok = not bad
    record(6, ok, f"{len(rows) - len(bad)}/{len(rows)} axiom checks pass")
    assert ok, bad


# -- 7

def test_c7_qa(grid):
    def run():
        out = []
        for name in ("unknot-r1", "3_1", "4_1"):
            res = qa_search(get(name))
            out.append((name, res.certified and validate_certificate(res.certificate), True))
        for f, _ in grid[0]:
            if abs(f.n) >= 2:
                out.append((str(f), qa_obstruction(f.diagram()).verdict == "not-qa", True))
            elif predicted_qa(f):
                res = qa_search_form(f)
                ok = res.certified and validate_certificate(res.certificate)
                D = f.diagram()
                Hr = reduced_homology(D, basepoint=min(D.edges()))
                thin = Hr.thickness().width == 1 and Hr.deltas() == {-signature(D)}
                out.append((str(f), ok, thin))
        return out

    rows, dt = _timed(run)
    bad = [n for n, ok, thin in rows if not (ok and thin)]
    ok = not bad and dt < LIMIT_QA
    record(7, ok, f"{len(rows) - len(bad)}/{len(rows)} QA checks pass ({dt:.1f}s)")
    assert ok, bad


# -- 8

def test_c8_mod2(grid):
    rows, _ = grid
    bad, wider = [], 0
    for f, H in rows:
        F2 = homology(f.diagram(), "F2")
        th_z, th_2 = H.thickness(), F2.thickness()
        w_q = H.rationalize().thickness().width
        consistent = F2 == H.reduce_mod(2)
        if not (consistent and th_2.contains(th_z) and th_2.width >= w_q):
            bad.append(str(f))
        wider += th_2.width > w_q
    ok = not bad
    record(8, ok, f"{len(rows) - len(bad)}/{len(rows)} forms: F2 agrees with Z by universal "
                  f"coefficients and contains the Z thickness; {wider} strictly wider over F2")
    assert ok, bad


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
