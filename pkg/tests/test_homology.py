import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khwidth.classical import jones_unnormalized, signature
from khwidth.corpus import corpus
from khwidth.diagram import BraidWord, LinkDiagram, closure
from khwidth.homology import (BigradedGroups, BudgetError, ThicknessError, ThicknessInterval,
                              check_skein_bounds, cube_complex, homology, parse_poincare,
                              reduced_cube_complex, reduced_homology, scan_complex)
from khwidth.twist import resolutions, shift_e
from oracles import khovanov_q_oracle
from strategies import knotted_diagrams

w = lambda text, n=None: closure(BraidWord.parse(text, strands=n))

T35_TEXT = ("q^7 + q^9 + q^11 t^2 + q^15 t^3 + q^13 t^4 + q^15 t^4 + q^17 t^5 + q^17 t^6"
            " + q^19 t^5 + q^21 t^7")


def test_unknot():
    H = homology(LinkDiagram.unknot())
    assert H.entries == {(0, 1): (1, ()), (0, -1): (1, ())}
    assert homology(w("s1", 2)) == H
    assert homology(w("s1^-1", 2)) == H


def test_unlink_is_tensor_square():
    U = homology(LinkDiagram.unknot())
    assert homology(LinkDiagram.unknot(2)) == U.tensor(U)


def test_trefoil_cube_generators():
    D = w("s1^3", 2)
    C = cube_complex(D)
    # circle counts per state: 2; 1,1,1; 2,2,2; 3
    assert C.generator_count() == 4 + 3 * 2 + 3 * 4 + 8
    C.check()
    S = C.simplify()
    S.check()
    assert S.generator_count() <= 12


def test_simplify_keeps_minimal_complex():
    S = cube_complex(w("s1^3", 2)).simplify()
    again = S.simplify()
    assert again.generator_count() == S.generator_count()
    assert again.homology() == S.homology()


@given(knotted_diagrams(max_len=8, connected=False))
@settings(max_examples=60)
def test_d_squared_zero(D):
    cube_complex(D).check()


@given(knotted_diagrams(max_len=6, connected=False))
def test_simplification_preserves_homology(D):
    C = cube_complex(D)
    assert C.simplify().homology() == C.homology()


@given(knotted_diagrams(max_len=6, connected=False))
def test_rational_ranks_match_brute_force_oracle(D):
    assert homology(D, "Q").ranks() == khovanov_q_oracle(D)


@given(knotted_diagrams(max_len=7, connected=False))
def test_scan_matches_cube_over_z(D):
    assert homology(D) == homology(D, method="cube")


def test_t35_rational_matches_display():
    H = homology(w("(s1 s2)^5", 3), "Q")
    assert H == parse_poincare(T35_TEXT)


def test_thickness_examples():
    assert homology(LinkDiagram.unknot()).thickness().as_tuple() == (-1, 1)
    assert homology(LinkDiagram.unknot()).thickness().width == 2
    assert homology(w("(s1 s2)^4", 3)).thickness().as_tuple() == (3, 7)
    th = homology(w("(s1 s2)^6", 3)).thickness()
    assert th.as_tuple() == (5, 11) and th.width == 4


def test_thickness_interval_validation():
    with pytest.raises(ThicknessError):
        ThicknessInterval(3, 1)
    with pytest.raises(ThicknessError):
        ThicknessInterval(0, 1)
    with pytest.raises(ThicknessError):
        BigradedGroups().thickness()


# -- reduced

def test_reduced_unknot():
    assert reduced_homology(LinkDiagram.unknot()).entries == {(0, 0): (1, ())}


def test_reduced_trefoil():
    D = w("s1^3", 2)
    assert signature(D) == -2
    Hr = reduced_homology(D, basepoint=min(D.edges()))
    assert Hr.thickness().as_tuple() == (2, 2)
    assert reduced_homology(D, basepoint=min(D.edges()), method="cube") == Hr


def test_reduced_needs_basepoint():
    with pytest.raises(ValueError):
        reduced_homology(w("s1^3", 2))


@pytest.mark.parametrize("name", [n for n, D in corpus(8).items()
                                  if D.is_connected() and D.is_alternating()])
def test_alternating_reduced_is_thin_on_minus_signature(name):
    D = corpus()[name]
    Hr = reduced_homology(D, basepoint=min(D.edges()))
    assert Hr.deltas() == {-signature(D)}


@given(knotted_diagrams(max_len=6), st.data())
def test_reduced_independent_of_basepoint_on_knots(D, data):
    if D.num_components() != 1:
        return
    e1, e2 = data.draw(st.sampled_from(D.edges())), data.draw(st.sampled_from(D.edges()))
    assert reduced_homology(D, basepoint=e1) == reduced_homology(D, basepoint=e2)


@given(knotted_diagrams(max_len=6, connected=False))
def test_reduced_scan_matches_reduced_cube(D):
    bp = min(D.edges())
    assert reduced_homology(D, basepoint=bp) == reduced_homology(D, basepoint=bp, method="cube")


# -- structural properties

@given(knotted_diagrams(max_len=8, connected=False))
def test_euler_characteristic_is_jones(D):
    assert homology(D).euler_characteristic() == jones_unnormalized(D)


@given(knotted_diagrams(max_len=8, connected=False), st.randoms(use_true_random=False))
def test_crossing_order_independence(D, rnd):
    order = list(range(D.num_crossings))
    rnd.shuffle(order)
    assert homology(D, order=order) == homology(D)
    assert homology(D.permuted(order)) == homology(D)


@given(knotted_diagrams(max_len=7, connected=False))
def test_mirror(D):
    H = homology(D)
    assert homology(D.mirror()) == H.flipped()
    assert homology(D.mirror(), "Q") == homology(D, "Q").flipped()
    assert H.flipped().flipped() == H


@given(knotted_diagrams(max_len=4, connected=False), knotted_diagrams(max_len=4, connected=False))
@settings(max_examples=25)
def test_kunneth(D1, D2):
    assert homology(D1.disjoint_union(D2)) == homology(D1).tensor(homology(D2))


@given(knotted_diagrams(max_len=7, connected=False))
def test_universal_coefficients(D):
    H = homology(D)
    assert homology(D, "F2") == H.reduce_mod(2)
    assert homology(D, "Fp:3") == H.reduce_mod(3)
    assert homology(D, "Q") == H.rationalize()


def test_torsion_in_t37():
    # T(3,4) carries Z/2 torsion; the Q ranks lose it and F2 doubles it up
    H = homology(w("(s1 s2)^4", 3))
    assert any(H.torsion_part().values())
    assert homology(w("(s1 s2)^4", 3), "F2").total_rank() > H.total_rank()


def test_budget():
    with pytest.raises(BudgetError):
        homology(w("(s1 s2)^6", 3), budget=5)


def test_json_and_csv_round_trip():
    H = homology(w("(s1 s2)^4", 3))
    assert BigradedGroups.from_json(H.to_json()) == H
    rows = H.csv_rows()
    assert rows[0] == ("i", "j", "delta", "rank", "torsion")
    assert all(r[2] == r[1] - 2 * r[0] for r in rows[1:])
    assert parse_poincare(H.poincare()) == H.rationalize()


# -- skein bounds

def _skein(D, x):
    Dv, Dh = resolutions(D, x)
    return check_skein_bounds(homology(D), homology(Dv), homology(Dh), shift_e(D, x, Dh),
                              D.signs[x])


def test_skein_trefoil():
    D = w("s1^3", 2)
    rep = _skein(D, 0)
    assert rep.passed


def test_skein_t34_shift():
    # closure of (s1 s2)^2 s1 resolved at its last letter: D_v = T(3,2), D_h = unknot
    D = w("(s1 s2)^2 s1", 3)
    x = D.num_crossings - 1
    Dv, Dh = resolutions(D, x)
    assert homology(Dv) == homology(w("(s1 s2)^2", 3))
    assert homology(Dh) == homology(LinkDiagram.unknot())
    rep = _skein(D, x)
    assert rep.e == 3 and rep.passed


@given(knotted_diagrams(max_len=8, connected=False), st.data())
@settings(max_examples=100)
def test_skein_bounds_random(D, data):
    x = data.draw(st.integers(0, D.num_crossings - 1))
    assert _skein(D, x).passed
