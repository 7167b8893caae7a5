import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from khwidth.braid3 import MurasugiForm, grid_forms, norm_form, predicted_turaev
from khwidth.diagram import BraidWord, DiagramError, LinkDiagram, closure
from khwidth.homology import homology
from khwidth.turaev import (braid_closure_genus, collapse_syllables, form_genus_upper,
                            search_genus, torus_turaev_genus, turaev_bounds,
                            turaev_genus_of_diagram)
from strategies import alternating_closures, braid_words, knotted_diagrams

B = lambda text: BraidWord.parse(text, strands=3)


def test_trefoil_surface():
    r = turaev_genus_of_diagram(closure(BraidWord.parse("s1^3")))
    assert (r.c, r.s0, r.s1, r.genus) == (3, 2, 3, 0)
    assert r.to_json() == {"c": 3, "s0": 2, "s1": 3, "genus": 0}


@pytest.mark.parametrize("s", range(1, 6))
def test_torus_family_genus(s):
    r = turaev_genus_of_diagram(closure(B("s1 s2") ** s))
    assert (r.c, r.s0, r.s1) == (2 * s, 3, 1)
    assert r.genus == s - 1


def test_mixed_word_genus():
    assert turaev_genus_of_diagram(closure(B("s1 s2 s1 s2^-1"))).genus == 1


def test_disconnected_rejected():
    with pytest.raises(DiagramError):
        turaev_genus_of_diagram(closure(BraidWord.parse("s1 s3")))


@given(knotted_diagrams(max_len=10))
def test_genus_parity_and_sign(D):
    r = turaev_genus_of_diagram(D)
    assert r.genus >= 0 and (2 - r.s0 - r.s1 + r.c) % 2 == 0


@given(alternating_closures())
def test_alternating_diagrams_have_genus_zero(D):
    assert turaev_genus_of_diagram(D).genus == 0


@given(knotted_diagrams(max_len=10))
def test_mirror_has_same_genus(D):
    assert turaev_genus_of_diagram(D.mirror()).genus == turaev_genus_of_diagram(D).genus


def test_collapse_example():
    assert collapse_syllables(B("s1^3 s2 s1^4 s2")) == B("s1 s2 s1 s2")
    assert collapse_syllables(B("s1 s2 s1^2"), cyclic=True) == B("s1 s2")


@given(braid_words(strands=3, min_len=2, max_len=14))
@settings(max_examples=100)
def test_collapse_keeps_genus(w):
    D = closure(w)
    assume(D.free_loops == 0 and D.is_connected())
    C = closure(collapse_syllables(w))
    assert C.is_connected()
    assert turaev_genus_of_diagram(C).genus == turaev_genus_of_diagram(D).genus


@pytest.mark.parametrize("q", range(3, 13))
def test_collapsed_norm_form(q):
    c = collapse_syllables(norm_form(q), cyclic=True)
    s = q // 3 + 1
    assert c == B("s1 s2") ** s
    assert braid_closure_genus(norm_form(q)) == q // 3


@pytest.mark.parametrize("q, g", [(5, 1), (6, 2), (-7, 2), (2, 0), (4, 1), (8, 2)])
def test_torus_turaev_genus(q, g):
    assert torus_turaev_genus(q) == g


def test_torus_turaev_domain():
    with pytest.raises(ValueError):
        torus_turaev_genus(1)


def test_search_never_increases_genus():
    w = B("s1^2 s2^-1 s1 s2 s1^-1 s2")
    g0 = braid_closure_genus(w)
    g, witness = search_genus(w, max_states=200)
    assert g <= g0
    assert braid_closure_genus(witness) == g


def test_bounds():
    b = turaev_bounds(width=4, upper=2)
    assert (b.lower, b.upper) == (2, 2)
    assert turaev_bounds(width=2, upper=3, alternating=True).upper == 0
    with pytest.raises(AssertionError):
        turaev_bounds(width=5, upper=1)


@given(st.sampled_from(grid_forms()))
@settings(max_examples=25)
def test_form_upper_bound_brackets_width(f):
    g, witness = form_genus_upper(f)
    w = homology(f.diagram()).thickness().width
    assert 0 <= g - (w - 2) <= 1
    lo, hi = predicted_turaev(f)
    assert lo <= g <= hi
