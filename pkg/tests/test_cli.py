import json

import pytest
from click.testing import CliRunner

from khwidth.cli import main
from khwidth.homology import parse_poincare
from test_homology import T35_TEXT


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(main, list(args), catch_exceptions=False)
    return _run


def test_width_examples(run):
    r = run("width", "braid:(s1 s2)^5")
    assert r.exit_code == 0 and r.output.strip() == "3"
    assert run("width", "braid:s1").output.strip() == "2"


def test_homology_poincare_t35(run):
    r = run("homology", "--ring", "Q", "braid:(s1 s2)^5")
    assert r.exit_code == 0
    assert parse_poincare(r.output.strip()) == parse_poincare(T35_TEXT)


def test_homology_formats(run):
    r = run("homology", "braid:(s1 s2)^4", "--format", "json")
    data = json.loads(r.output)
    assert data["thickness"] == {"delta_min": 3, "delta_max": 7, "width": 3}
    assert any(e["torsion"] for e in data["entries"])
    r = run("homology", "braid:s1^3", "--format", "csv")
    lines = r.output.strip().splitlines()
    assert lines[0] == "i,j,delta,rank,torsion" and len(lines) == 6
    r = run("homology", "braid:(s1 s2)^4", "--format", "poincare")
    assert "torsion: Z/2" in r.output


def test_rings_and_reduced(run):
    assert run("width", "braid:(s1 s2)^4", "--ring", "F2").output.strip() == "3"
    assert run("width", "braid:(s1 s2)^4", "--ring", "Fp:3").output.strip() == "3"
    assert run("width", "braid:s1^3", "--reduced").output.strip() == "1"
    r = run("homology", "braid:s1^3", "--reduced", "--basepoint", "2", "--format", "json")
    assert json.loads(r.output)["width"] == 1


def test_pd_and_form_inputs(run):
    assert run("width", "pd:X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]").output.strip() == "2"
    data = json.loads(run("width", "form:h^-1 * s2^5", "--format", "json").output)
    assert data["width"] == data["predicted"]["width"] == 3
    assert data["thickness"] == list(data["predicted"]["thickness"])


def test_exit_codes(run):
    r = run("width", "braid:s1 ?")
    assert r.exit_code == 2 and "cannot parse" in r.output
    assert run("width", "form:h * s2 s1").exit_code == 2
    assert run("width", "pd:X[1,2,3,4]").exit_code == 2
    r = run("width", "braid:(s1 s2)^10", "--budget", "5")
    assert r.exit_code == 3
    assert run("width", "braid:s1", "--budget", "0").exit_code == 2
    assert run("homology", "braid:s1", "--ring", "R").exit_code == 2


def test_cache_hits_do_not_change_output(run, tmp_path):
    args = ("homology", "braid:(s1 s2)^4", "--format", "json", "--cache-dir", str(tmp_path))
    first = run(*args).output
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert run(*args).output == first
    # a relabelled but identical diagram hits the same entry
    run("homology", "braid:(s1 s2)^4", "--cache-dir", str(tmp_path))
    assert len(list(tmp_path.iterdir())) == 1
    run("homology", "braid:(s1 s2)^4", "--ring", "Q", "--cache-dir", str(tmp_path))
    assert len(list(tmp_path.iterdir())) == 2
    assert run(*args[:-2]).output == first


def test_verify(run):
    r = run("verify", "torus", "--max-q", "4")
    assert r.exit_code == 0 and "torus: 4/4 passed" in r.output
    r = run("verify", "threebraid", "--n-range", "1..1", "--format", "json")
    data = json.loads(r.output)
    assert r.exit_code == 0 and data["failed"] == 0 and data["cases"]
    assert run("verify", "nonsense").exit_code == 2
    assert run("verify", "torus", "--n-range", "x").exit_code == 2


def test_verify_is_reproducible(run):
    a = run("verify", "twist", "--trials", "5", "--seed", "7", "--format", "json").output
    b = run("verify", "twist", "--trials", "5", "--seed", "7", "--format", "json").output
    assert a == b
    assert json.loads(a)["failed"] == 0


def test_twist_command(run):
    r = run("twist", "braid:s1^3", "--at", "0", "--tangle", "2,3")
    data = json.loads(r.output)
    assert r.exit_code == 0
    assert data["before"] == data["after"] == 2 and data["passed"] is True
    assert data["crossings"] == 3 - 1 + 5
    r = run("twist", "braid:s1^3", "--at", "0", "--tangle", "2,-1")
    data = json.loads(r.output)
    assert "width_preserving" in data and data["after"] >= 1
    assert run("twist", "braid:s1^3", "--at", "9", "--tangle", "2").exit_code == 2
    assert run("twist", "braid:s1^3", "--at", "0", "--tangle", "2,0").exit_code == 2


def test_turaev_command(run):
    data = json.loads(run("turaev", "braid:(s1 s2)^4").output)
    assert data == {"c": 8, "s0": 3, "s1": 1, "genus": 3}
    data = json.loads(run("turaev", "form:h^2 * s2^3").output)
    assert data["g_T"]["lower"] == data["g_T"]["upper"] == 2
    assert run("turaev", "braid:s1 s3").exit_code == 2


def test_qa_command(run):
    data = json.loads(run("qa", "braid:s1 s2^-1 s1 s2^-1").output)
    assert data["status"] == "certified" and data["obstruction"]["verdict"] == "inconclusive"
    data = json.loads(run("qa", "form:h^2 * s1 s2^-1", "--depth", "2").output)
    assert data["status"] == "unknown" and data["obstruction"]["verdict"] == "not-qa"


def test_predict_command(run):
    data = json.loads(run("predict", "h^1 * s2^-5").output)
    assert data["predicted"]["thickness"] == [-2, 2] and data["predicted"]["width"] == 3
    assert run("predict", "h * s1").exit_code == 2
