import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from khwidth.braid3 import (MurasugiForm, braids_equal, burau, equivalent_words, full_twist,
                            grid_forms, is_exceptional, isotopic_diagrams, norm_form,
                            predicted_qa, predicted_thickness, predicted_turaev, predicted_width,
                            torus_thickness, torus_word)
from khwidth.diagram import BraidWord, DiagramError, closure
from khwidth.homology import homology
from strategies import braid_words

t = sympy.Symbol("t")
B = lambda text: BraidWord.parse(text, strands=3)


def unreduced_burau(word: BraidWord):
    """(k, M) with t^-k M the 3x3 unreduced Burau matrix, built independently with sympy.

    Inverse generators are scaled by t so every entry stays a polynomial.
    """
    M, k = sympy.eye(3), 0
    for g, e in word.letters:
        S = sympy.eye(3)
        i = g - 1
        if e > 0:
            block = ((1 - t, t), (1, 0))
        else:
            block = ((0, t), (1, t - 1))
            S = S * t
            k += 1
        S[i:i + 2, i:i + 2] = sympy.Matrix(block)
        M = (M * S).applyfunc(sympy.expand)
    return k, M


def oracle_equal(w1, w2):
    (k1, M1), (k2, M2) = unreduced_burau(w1), unreduced_burau(w2)
    diff = (M1 * t ** k2 - M2 * t ** k1).applyfunc(sympy.expand)
    return w1.exponent_sum() == w2.exponent_sum() and diff == sympy.zeros(3)


# -- word problem

@pytest.mark.parametrize("lhs, rhs", [
    ("s1 s2 s1", "s2 s1 s2"),
    ("(s1 s2)^3", "s1^2 s2 s1^2 s2"),
    ("(s1 s2)^6", "s1^3 s2 s1^3 s2 s1^3 s2"),
])
def test_braid_identities(lhs, rhs):
    assert braids_equal(B(lhs), B(rhs))
    assert burau(B(lhs)) == burau(B(rhs))
    assert oracle_equal(B(lhs), B(rhs))


def test_unequal_braids():
    assert not braids_equal(B("s1 s2"), B("s2 s1"))
    assert not braids_equal(B("s1"), B("s2"))


def test_burau_needs_three_strands():
    with pytest.raises(DiagramError):
        burau(BraidWord.parse("s1 s2 s3"))


@given(braid_words(strands=3, max_len=6), braid_words(strands=3, max_len=6))
@settings(max_examples=60)
def test_braids_equal_matches_oracle(w1, w2):
    assert braids_equal(w1, w2) == oracle_equal(w1, w2)


@given(braid_words(strands=3, max_len=6))
def test_word_times_inverse_is_trivial(w):
    assert braids_equal(w * w.inverse(), BraidWord(3, ()))


@given(braid_words(strands=3, max_len=6))
def test_full_twist_is_central(w):
    h = full_twist(1)
    assert braids_equal(h * w, w * h)


# -- norm form identities

@pytest.mark.parametrize("q, text", [
    (3, "s1^2 s2 s1^2 s2"),
    (4, "s1^2 s2 s1^3 s2 s1"),
    (5, "s1^3 s2 s1^3 s2 s1^2"),
    (7, "s1^3 s2 s1^3 s2 s1^4 s2 s1"),
])
def test_norm_form_examples(q, text):
    assert norm_form(q) == B(text)


def _displayed(n, r):
    mid = "s1^4 s2 " * (n - 2 if r < 2 else n - 1)
    if r == 0:
        return B(f"s1^3 s2 {mid}s1^3 s2 s1^{n + 1} s2")
    if r == 1:
        return B(f"s1^3 s2 {mid}s1^3 s2 s1^{n + 2} s2 s1")
    return B(f"s1^3 s2 {mid}s1^3 s2 s1^{n + 1}")


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("r", [0, 1, 2])
def test_general_norm_identities(n, r):
    q = 3 * n + r
    lhs = B("s1 s2") ** q
    assert oracle_equal(lhs, _displayed(n, r))
    assert braids_equal(lhs, norm_form(q))


@pytest.mark.parametrize("q", range(1, 19))
def test_norm_form_equals_torus_braid(q):
    assert oracle_equal(norm_form(q), torus_word(q))


def test_norm_form_domain():
    with pytest.raises(ValueError):
        norm_form(0)


# -- forms

def test_form_parse_and_print():
    f = MurasugiForm.parse("h^2 * s1^3 s2^-1 s1 s2^-2")
    assert f.kind == "alt" and f.pairs == ((3, 1), (1, 2)) and f.n == 2
    assert (f.a, f.b) == (4, 3)
    assert MurasugiForm.parse(str(f)) == f
    assert MurasugiForm.parse("h^-1 * s2^5") == MurasugiForm.power(-1, 5)
    assert MurasugiForm.parse("h s1^-2 s2^-1") == MurasugiForm.special(1, -2)
    assert MurasugiForm.parse("h^3") == MurasugiForm.power(3, 0)


@pytest.mark.parametrize("bad", ["h^2 * s1 s2", "h * s2 s1", "h * s1^-4 s2^-1", "h * s1^2"])
def test_form_parse_rejects_non_normal_tails(bad):
    with pytest.raises(ValueError):
        MurasugiForm.parse(bad)


def test_form_validation():
    with pytest.raises(ValueError):
        MurasugiForm.special(1, -4)
    with pytest.raises(ValueError):
        MurasugiForm.alt(1, [(0, 1)])


def test_to_word():
    f = MurasugiForm.power(1, 2)
    assert f.to_word() == B("(s1 s2)^3 s2^2")
    assert MurasugiForm.power(0, 0).diagram().free_loops == 3


def test_cancellation():
    assert not MurasugiForm.power(1, 2).has_cancellation()
    assert MurasugiForm.power(1, -2).has_cancellation()
    assert not MurasugiForm.power(0, 3).has_cancellation()
    assert MurasugiForm.alt(1, [(1, 1)]).has_cancellation()
    assert MurasugiForm.special(-1, -1).has_cancellation() is False


def test_predicted_thickness_examples():
    assert predicted_thickness(MurasugiForm.alt(1, [(2, 1)])).as_tuple() == (4, 6)
    th = predicted_thickness(MurasugiForm.power(1, -5))
    assert th.as_tuple() == (-2, 2) and th.width == 3
    assert predicted_thickness(MurasugiForm.special(1, -2)).as_tuple() == (0, 2)
    assert predicted_thickness(MurasugiForm.power(0, 2)) is None


def test_predicted_width_examples():
    # h^2 s2 has no cancellation, so |n| + 2
    f = MurasugiForm.power(2, 1)
    assert predicted_width(f) == 4
    assert homology(f.diagram()).thickness().width == 4
    assert predicted_width(MurasugiForm.power(2, -1)) == 3
    assert predicted_width(MurasugiForm.power(-1, 5)) == 3 and is_exceptional(MurasugiForm.power(-1, 5))
    assert predicted_width(MurasugiForm.alt(1, [(1, 1)])) == 2


def test_predicted_qa_examples():
    assert predicted_qa(MurasugiForm.alt(1, [(1, 1)]))
    assert predicted_qa(MurasugiForm.power(1, -2))
    assert not predicted_qa(MurasugiForm.special(-1, -1))
    assert predicted_qa(MurasugiForm.special(0, -1))
    assert not predicted_qa(MurasugiForm.power(2, -1))


def test_predicted_turaev_examples():
    assert predicted_turaev(MurasugiForm.power(2, 3)) == (2, 2)
    assert predicted_turaev(MurasugiForm.special(3, -1)) == (2, 2)
    assert predicted_turaev(MurasugiForm.alt(2, [(1, 1)])) == (1, 2)
    assert predicted_turaev(MurasugiForm.power(0, 1)) is None


def test_torus_thickness_table():
    assert torus_thickness(6).as_tuple() == (5, 11)
    assert torus_thickness(-7).as_tuple() == (-13, -7)
    assert torus_thickness(8).as_tuple() == (9, 15)
    assert torus_thickness(7, mirror=True) == torus_thickness(-7)
    with pytest.raises(ValueError):
        torus_thickness(1)


def test_grid_size_and_budget():
    forms = grid_forms()
    assert len(forms) == len({str(f) for f in forms}) == 128
    assert max(f.diagram().num_crossings for f in forms) <= 20
    assert {f.kind for f in forms} == {"alt", "power", "special"}


@given(st.sampled_from(grid_forms()))
@settings(max_examples=20)
def test_grid_sample_matches_prediction(f):
    th = homology(f.diagram()).thickness()
    assert th == predicted_thickness(f)
    assert th.width == predicted_width(f)


@given(st.sampled_from(grid_forms()))
@settings(max_examples=30)
def test_equivalent_words_are_conjugate_braids(f):
    words = equivalent_words(f)
    assert words
    base = f.to_word()
    for w in words:
        assert w.exponent_sum() == base.exponent_sum()
    # every rewrite closes up to the same link, so the homology agrees
    for D in isotopic_diagrams(f)[:2]:
        assert homology(D) == homology(f.diagram())
