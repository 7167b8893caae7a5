import copy
import json

import pytest
from hypothesis import given, settings

from khwidth.braid3 import MurasugiForm
from khwidth.classical import determinant, signature
from khwidth.corpus import get
from khwidth.diagram import BraidWord, LinkDiagram, closure
from khwidth.homology import reduced_homology
from khwidth.qa import (certificate_json, certificate_size, qa_obstruction, qa_search,
                        qa_search_form, validate_certificate)
from oracles import determinant_oracle
from strategies import alternating_closures, knotted_diagrams

w = lambda text, n=None: closure(BraidWord.parse(text, strands=n))


def _nodes(cert):
    yield cert
    for c in cert.get("children", ()):
        yield from _nodes(c)


def test_unknot_is_leaf():
    for D in (LinkDiagram.unknot(), w("s1", 2), w("s1 s2^-1", 3)):
        res = qa_search(D)
        assert res.certified and res.certificate["leaf"] == "unknot"


def test_trefoil_det_split():
    res = qa_search(w("s1^3", 2))
    assert res.certified and res.certificate["det"] == 3
    # a reduced alternating diagram is already a leaf; force one recursion step
    T = w("s1^3", 2)
    assert determinant(T.smooth(0, 0)) + determinant(T.smooth(0, 1)) == 3
    assert sorted([determinant(T.smooth(0, 0)), determinant(T.smooth(0, 1))]) == [1, 2]


def test_figure_eight_certified_but_obstruction_inconclusive():
    D = get("4_1")
    assert qa_search(D).certified
    ob = qa_obstruction(D)
    assert ob.verdict == "inconclusive" and ob.minus_signature == 0


def test_non_alternating_qa_knot_needs_recursion():
    f = MurasugiForm.parse("h * s1 s2^-1")
    res = qa_search_form(f)
    assert res.certified and validate_certificate(res.certificate)
    assert res.certificate["det"] == determinant(f.diagram())


def test_full_twist_squared_is_obstructed():
    f = MurasugiForm.parse("h^2 * s1 s2^-1")
    assert qa_search_form(f).status == "unknown"
    assert qa_obstruction(f.diagram()).verdict == "not-qa"
    # h^2 s2 has no cancellation: unreduced width 4, reduced width 3
    ob = qa_obstruction(MurasugiForm.power(2, 1).diagram())
    assert ob.verdict == "not-qa"
    assert (ob.reduced_thickness[1] - ob.reduced_thickness[0]) // 2 + 1 == 3


def test_split_link_is_obstructed():
    U = w("s1^3", 2).disjoint_union(w("s1^2", 2))
    assert qa_search(U).status == "unknown"
    assert qa_obstruction(U).verdict == "not-qa"


def test_tampered_certificates_fail():
    cert = qa_search_form(MurasugiForm.parse("h * s1 s2^-1")).certificate
    assert validate_certificate(cert)
    if "children" not in cert:
        pytest.skip("certificate is a single leaf")
    bad = copy.deepcopy(cert)
    bad["det"] += 1
    assert not validate_certificate(bad)
    bad = copy.deepcopy(cert)
    bad["children"].reverse()
    assert not validate_certificate(bad)
    bad = copy.deepcopy(cert)
    bad["crossing"] = 10 ** 6
    assert not validate_certificate(bad)


def test_certificate_serialisation():
    cert = qa_search(get("4_1")).certificate
    assert json.loads(certificate_json(cert)) == cert
    assert certificate_size(cert) >= 1


@given(alternating_closures())
def test_alternating_nonsplit_links_certify(D):
    if not D.is_connected() or determinant(D) == 0:
        return
    res = qa_search(D)
    assert res.certified


@given(knotted_diagrams(max_len=7))
@settings(max_examples=30)
def test_certificates_revalidate_and_are_thin(D):
    res = qa_search(D, depth=3)
    if not res.certified:
        return
    for node in _nodes(res.certificate):
        N = LinkDiagram.from_json(node["diagram"])
        assert determinant_oracle(N) == node["det"] if N.num_crossings else True
    Hr = reduced_homology(D, basepoint=min(D.edges()))
    assert Hr.deltas() == {-signature(D)}
    assert not Hr.torsion_part()
    assert qa_obstruction(D).verdict == "inconclusive"
