"""Command-line interface.

Inputs are ``braid:<word>``, ``pd:<PD code>``, ``json:<diagram json>``,
``form:<3-braid normal form>`` (for example ``form:h^2 * s1^3 s2^-1``) or a
bare braid word.  Exit codes: 2 for unparseable input, 3 when a diagram is
over the crossing budget.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import sys
from pathlib import Path

import click

from . import __version__
from .braid3 import MurasugiForm, predicted_report
from .diagram import DiagramError, LinkDiagram, parse_diagram
from .homology import DEFAULT_BUDGET, BigradedGroups, BudgetError, homology, reduced_homology
from .suites import SUITES, run_suite

EXIT_PARSE, EXIT_BUDGET = 2, 3


class Input:
    def __init__(self, text: str):
        self.text = text
        self.form = None
        s = text.strip()
        try:
            if s.startswith("form:"):
                self.form = MurasugiForm.parse(s[5:])
                self.diagram = self.form.diagram()
            else:
                self.diagram = parse_diagram(s)
        except (DiagramError, ValueError) as exc:
            raise click.exceptions.Exit(_fail(f"cannot parse {text!r}: {exc}", EXIT_PARSE))


def _fail(message: str, code: int) -> int:
    click.echo(f"error: {message}", err=True)
    return code


def _cache_key(D: LinkDiagram, ring: str, reduced: bool) -> str:
    payload = json.dumps([D.canonical_key(), ring, reduced, __version__])
    return hashlib.sha256(payload.encode()).hexdigest()


def compute_groups(D: LinkDiagram, ring: str, budget: int, reduced: bool, basepoint,
                   cache_dir) -> BigradedGroups:
    if reduced:
        if basepoint is None:
            basepoint = D.basepoint if D.basepoint is not None else min(D.edges(), default=None)
        if basepoint is not None:
            D = D.with_basepoint(basepoint)
    path = None
    if cache_dir:
        path = Path(cache_dir) / f"{_cache_key(D, ring, reduced)}.json"
        if path.exists():
            return BigradedGroups.from_json(path.read_text())
    if reduced:
        H = reduced_homology(D, ring, budget, basepoint=D.basepoint)
    else:
        H = homology(D, ring, budget)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(H.to_json(), sort_keys=True))
    return H


def _groups_or_exit(inp: Input, opts) -> BigradedGroups:
    try:
        return compute_groups(inp.diagram, opts["ring"], opts["budget"], opts["reduced"],
                              opts["basepoint"], opts["cache_dir"])
    except BudgetError as exc:
        raise click.exceptions.Exit(_fail(str(exc), EXIT_BUDGET))
    except ValueError as exc:
        raise click.exceptions.Exit(_fail(str(exc), EXIT_PARSE))


def _emit(obj, fmt: str = "json"):
    if fmt == "json":
        click.echo(json.dumps(obj, indent=2, sort_keys=True))
    else:
        click.echo(obj)


def _common(f):
    f = click.option("--ring", default="Z", show_default=True,
                     help="Z, Q, F2 or Fp:<p>.")(f)
    f = click.option("--budget", default=DEFAULT_BUDGET, show_default=True, type=click.IntRange(1),
                     help="Largest crossing count attempted.")(f)
    f = click.option("--reduced", is_flag=True, help="Reduced homology.")(f)
    f = click.option("--basepoint", type=int, default=None,
                     help="Edge label carrying the basepoint (reduced only).")(f)
    f = click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
                     help="Directory for content-addressed result files.")(f)
    return f


@click.group()
@click.version_option(__version__)
def main():
    """Khovanov homology and width of links, with checks for twisted links and 3-braids."""


@main.command("homology")
@click.argument("input_text", metavar="INPUT")
@_common
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "poincare"]), default="poincare",
              show_default=True)
def homology_cmd(input_text, fmt, **opts):
    """Bigraded Khovanov homology of INPUT."""
    inp = Input(input_text)
    H = _groups_or_exit(inp, opts)
    if fmt == "json":
        out = H.to_json()
        out["thickness"] = H.thickness().to_json()
        _emit(out)
    elif fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(H.csv_rows())
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo(H.poincare())
        tors = H.torsion_text()
        if tors:
            click.echo("torsion: " + tors)


@main.command("width")
@click.argument("input_text", metavar="INPUT")
@_common
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text",
              show_default=True)
def width_cmd(input_text, fmt, **opts):
    """Khovanov width of INPUT (number of occupied delta diagonals)."""
    inp = Input(input_text)
    th = _groups_or_exit(inp, opts).thickness()
    if fmt == "json":
        out = {"input": input_text, "thickness": [th.delta_min, th.delta_max], "width": th.width}
        if inp.form is not None:
            out.update(predicted_report(inp.form))
        _emit(out)
    else:
        click.echo(th.width)


@main.command("predict")
@click.argument("form_text", metavar="FORM")
def predict_cmd(form_text):
    """Closed-form thickness, width, QA status and Turaev bounds of a 3-braid normal form."""
    try:
        f = MurasugiForm.parse(form_text.removeprefix("form:"))
    except (DiagramError, ValueError) as exc:
        raise click.exceptions.Exit(_fail(str(exc), EXIT_PARSE))
    _emit(predicted_report(f))


@main.command("verify")
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--max-q", default=8, show_default=True, help="torus: largest |q|.")
@click.option("--n-range", default="-2..2", show_default=True, help="threebraid: range of n.")
@click.option("--trials", default=50, show_default=True,
              help="twist: width-preserving trials required.")
@click.option("--seed", default=0, show_default=True, type=click.IntRange(0, 2**64 - 1))
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(1))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text",
              show_default=True)
def verify_cmd(suite, max_q, n_range, trials, seed, jobs, fmt):
    """Run a verification suite; exit status 1 if any case fails."""
    try:
        lo, hi = (int(v) for v in n_range.split(".."))
    except ValueError:
        raise click.exceptions.Exit(_fail(f"bad --n-range {n_range!r}; use a..b", EXIT_PARSE))
    rows = run_suite(suite, max_q=max_q, n_range=(lo, hi), trials=trials, seed=seed, jobs=jobs)
    failed = sum(not r["passed"] for r in rows)
    if fmt == "json":
        _emit({"suite": suite, "seed": seed, "cases": rows, "failed": failed})
    else:
        for r in rows:
            click.echo(f"{'PASS' if r['passed'] else 'FAIL'}  {r['case']}  "
                       f"expected={r['expected']} observed={r['observed']}")
        click.echo(f"{suite}: {len(rows) - failed}/{len(rows)} passed")
    sys.exit(1 if failed else 0)


@main.command("twist")
@click.argument("input_text", metavar="INPUT")
@click.option("--at", "at", type=int, required=True, help="Crossing index (0-based).")
@click.option("--tangle", required=True, help='Rational tangle terms, e.g. "2,3,4".')
@click.option("--budget", default=DEFAULT_BUDGET, show_default=True, type=click.IntRange(1))
def twist_cmd(input_text, at, tangle, budget):
    """Twist INPUT at a crossing by a rational tangle and compare widths."""
    from .twist import RationalTangle, twist, verify_alt_tangle, width_preserving

    inp = Input(input_text)
    try:
        tau = RationalTangle.parse(tangle)
        D = inp.diagram
        if not 0 <= at < D.num_crossings:
            raise DiagramError(f"no crossing {at}")
        Dt = twist(D, at, tau)
        if Dt.num_crossings > budget:
            raise BudgetError(Dt.num_crossings, budget)
        if tau.alternating:
            rep = verify_alt_tangle(D, at, tau, budget=budget).to_json()
            if rep["after"] is None:
                rep["after"] = homology(Dt, budget=budget).thickness().width
        else:
            pres = width_preserving(D, at, budget=budget)
            rep = {"tangle": str(tau), "crossing": at, "preserving": pres.verdict,
                   "width_preserving": pres.to_json(),
                   "before": homology(D, budget=budget).thickness().width,
                   "after": homology(Dt, budget=budget).thickness().width, "stages": []}
        rep["crossings"] = Dt.num_crossings
        rep["pd"] = Dt.pd_string()
    except BudgetError as exc:
        raise click.exceptions.Exit(_fail(str(exc), EXIT_BUDGET))
    except (DiagramError, ValueError) as exc:
        raise click.exceptions.Exit(_fail(str(exc), EXIT_PARSE))
    _emit(rep)


@main.command("turaev")
@click.argument("input_text", metavar="INPUT")
@click.option("--search", default=0, show_default=True,
              help="States explored by the braid-move search for a smaller genus.")
def turaev_cmd(input_text, search):
    """Turaev surface genus of INPUT's diagram, with bounds for 3-braid forms."""
    from .homology import homology as kh
    from .turaev import form_genus_upper, turaev_bounds, turaev_genus_of_diagram

    inp = Input(input_text)
    try:
        rep = turaev_genus_of_diagram(inp.diagram).to_json()
    except DiagramError as exc:
        raise click.exceptions.Exit(_fail(str(exc), EXIT_PARSE))
    if inp.form is not None:
        g, w = form_genus_upper(inp.form, search)
        width = kh(inp.diagram).thickness().width
        bounds = turaev_bounds(width, g, witness=str(w))
        rep["g_T"] = bounds.to_json()
        rep.update(predicted_report(inp.form))
    _emit(rep)


@main.command("qa")
@click.argument("input_text", metavar="INPUT")
@click.option("--depth", default=6, show_default=True, type=click.IntRange(0))
def qa_cmd(input_text, depth):
    """Search for a quasi-alternating certificate and run the homological obstruction."""
    from .qa import qa_obstruction, qa_search, qa_search_form

    inp = Input(input_text)
    res = qa_search_form(inp.form, depth) if inp.form is not None else qa_search(inp.diagram, depth)
    out = res.to_json()
    try:
        out["obstruction"] = qa_obstruction(inp.diagram).to_json()
    except BudgetError as exc:
        out["obstruction"] = {"verdict": "inconclusive", "reason": str(exc)}
    _emit(out)


if __name__ == "__main__":
    main()
