"""Command-line front end.

Exit statuses: 0 all gating rows ok, 1 a gating row failed, 2 usage error,
3 a size budget was exceeded.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from importlib import resources
from typing import Iterable, Optional

import click

from .errors import BudgetExceeded, DivisibilityViolation, DomainError
from . import __version__
from .numtheory import IntegerSequence, census
from .pwl_oracle import DEFAULT_LAP_BUDGET, make_fn, oracle_sequence
from .roots import dominant_root
from .sequences import (FAMILY_KINDS, N1_EXTENSION_NOTE, RecurrenceFamily, conjecture_report,
                        remark1_A, remark2_D, thm3_phi, thm4_phi)
from .symdyn import base_representation, derive_rules, edge_counts, fixed_count_symbolic, iterate_word

EXIT_GATING = 1
EXIT_BUDGET = 3
REP_MAX_LENGTH = 100_000

REPORT_FIELDS = ("family", "n", "m", "k", "value", "expected", "source", "status", "detail")


@dataclass(frozen=True)
class ReportRow:
    family: str
    n: Optional[int] = None
    m: Optional[int] = None
    k: Optional[int] = None
    value: Optional[str] = None
    expected: Optional[str] = None
    source: str = "none"
    status: str = "ok"
    detail: str = ""
    gating: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.status not in ("ok", "mismatch", "error"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "mismatch" and (self.value is None or self.expected is None):
            raise ValueError("a mismatch row needs both values")

    def sort_key(self):
        return (self.family, self.n or 0, self.m or 0, self.k or 0, self.detail)

    def as_record(self) -> dict:
        d = asdict(self)
        d.pop("gating")
        return {k: ("" if d[k] is None else str(d[k])) for k in REPORT_FIELDS}


def parse_range(text: str) -> range:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise click.BadParameter(f"expected an integer or a range a..b, got {text!r}") from None


class RangeType(click.ParamType):
    name = "range"

    def convert(self, value, param, ctx):
        if isinstance(value, range):
            return value
        try:
            return parse_range(value)
        except click.BadParameter as exc:
            self.fail(exc.message, param, ctx)


RANGE = RangeType()


def _write_records(records: list[dict], fields: Iterable[str], fmt: str) -> None:
    out = click.get_text_stream("stdout")
    if fmt == "json":
        out.write(json.dumps(records, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    out.write(buf.getvalue())


def _emit_report(rows: list[ReportRow], fmt: str) -> int:
    rows = sorted(rows, key=ReportRow.sort_key)
    _write_records([r.as_record() for r in rows], REPORT_FIELDS, fmt)
    failed = [r for r in rows if r.gating and r.status != "ok"]
    if failed:
        click.echo(f"{len(failed)} gating row(s) failed", err=True)
        return EXIT_GATING
    return 0


def _family(kind: str, n: int) -> RecurrenceFamily:
    try:
        return RecurrenceFamily(kind, n, extend_n1=(kind == "thm4" and n == 1))
    except DomainError as exc:
        raise click.UsageError(str(exc)) from None


FORMAT = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
                      show_default=True)


@click.group()
@click.version_option(version=__version__)
def main():
    """Exact periodic-point counts and the congruences they satisfy."""


@main.command("seq")
@click.option("--family", "kind", type=click.Choice(FAMILY_KINDS), required=True)
@click.option("--n", type=int, required=True)
@click.option("--m", "mrange", type=RANGE, default="1..10", show_default=True)
@FORMAT
def cmd_seq(kind, n, mrange, fmt):
    """Print family values phi(m) as exact decimals."""
    fam = _family(kind, n)
    top = max(mrange, default=0)
    if min(mrange, default=1) < 1:
        raise click.BadParameter("m must be >= 1", param_hint="--m")
    seq = fam.sequence(top) if top else None
    records = [{"family": kind, "n": str(n), "m": str(m), "value": str(seq(m))} for m in mrange]
    _write_records(records, ("family", "n", "m", "value"), fmt)


def _verify_family(kind: str, n: int, mmax: int, corrupt: Optional[int]) -> list[ReportRow]:
    fam = RecurrenceFamily(kind, n, extend_n1=(kind == "thm4" and n == 1))
    seq = fam.sequence(mmax)
    if corrupt is not None:
        seq = seq.perturbed(corrupt, 1)
    rows = []
    length = (lambda m: 2 * m) if fam.census_kind == "symmetric" else (lambda m: m)
    for m in range(1, mmax + 1):
        try:
            count, orbits = census(seq, m, fam.census_kind)
            rows.append(ReportRow(kind, n, m, None, str(count), f"0 mod {length(m)}", "formula",
                                  "ok", f"orbits={orbits}"))
        except DivisibilityViolation as exc:
            rows.append(ReportRow(kind, n, m, None, str(exc.count), f"0 mod {exc.divisor}", "formula",
                                  "mismatch", f"remainder={exc.count % exc.divisor}"))
    return rows


def _parse_family_spec(text: str) -> tuple[str, range]:
    kind, _, nr = text.partition(":")
    if kind not in FAMILY_KINDS or not nr:
        raise click.BadParameter(f"expected KIND:NRANGE with KIND in {FAMILY_KINDS}, got {text!r}")
    return kind, parse_range(nr)


DEFAULT_VERIFY = ("thm3:3..8", "thm4:2..6", "thm5phi:2..6", "thm5psi:2..6")


def _run_jobs(func, tasks: list[tuple], jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [func(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, *zip(*tasks)))


@main.command("verify")
@click.option("--family", "families", multiple=True, default=DEFAULT_VERIFY, show_default=True,
              help="KIND:NRANGE, e.g. thm3:3..8; repeatable.")
@click.option("--mmax", type=int, default=120, show_default=True)
@click.option("--corrupt", hidden=True, default=None,
              help="KIND:N:M - add 1 to one sequence value (negative control).")
@click.option("--jobs", type=int, default=1, show_default=True)
@FORMAT
def cmd_verify(families, mmax, corrupt, jobs, fmt):
    """Check the orbit divisibility of Phi_1 (or Phi_2 for thm5psi) for m <= MMAX."""
    specs = []
    for text in families:
        try:
            specs.append(_parse_family_spec(text))
        except click.BadParameter as exc:
            raise click.BadParameter(exc.message, param_hint="--family") from None
    target = None
    if corrupt:
        try:
            ck, cn, cm = corrupt.split(":")
            target = (ck, int(cn), int(cm))
        except ValueError:
            raise click.BadParameter("expected KIND:N:M", param_hint="--corrupt") from None
    tasks = []
    for kind, nrange in specs:
        for n in nrange:
            _family(kind, n)
            hit = target[2] if target and target[:2] == (kind, n) else None
            tasks.append((kind, n, mmax, hit))
    rows = [r for chunk in _run_jobs(_verify_family, tasks, jobs) for r in chunk]
    sys.exit(_emit_report(rows, fmt))


def _load_fixture(path) -> list[dict]:
    text = path.read_text() if hasattr(path, "read_text") else open(path).read()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.DictReader(lines)
    need = {"table", "m", "n", "value"}
    if reader.fieldnames is None or not need <= set(reader.fieldnames):
        raise click.ClickException(f"fixture {path} must have columns {sorted(need)}")
    rows = []
    for i, rec in enumerate(reader, start=2):
        try:
            rows.append({"table": rec["table"], "m": int(rec["m"]), "n": int(rec["n"]),
                         "value": int(rec["value"]), "role": (rec.get("role") or "gating").strip()})
        except (TypeError, ValueError):
            raise click.ClickException(f"malformed fixture row {i}: {rec}") from None
    return rows


def _default_fixture(which: str):
    name = "table1.csv" if which == "remark1" else "table2.csv"
    return resources.files("periodcount").joinpath("data", name)


@main.command("tables")
@click.option("--which", type=click.Choice(["remark1", "remark2"]), required=True)
@click.option("--fixture", "fixture_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="CSV table,m,n,value[,role]; defaults to the packaged table.")
@click.option("--reindex", is_flag=True,
              help="remark1 only: compare row r with Phi_1(r, phi_n)/r instead of A_{r,n}.")
@FORMAT
def cmd_tables(which, fixture_path, reindex, fmt):
    """Compare computed A (remark1) or D (remark2) with a reference table."""
    fixture = _load_fixture(fixture_path if fixture_path else _default_fixture(which))
    if not fixture:
        sys.exit(_emit_report([], fmt))
    mtop = max(r["m"] for r in fixture)
    cache: dict[int, IntegerSequence] = {}
    rows = []
    for rec in fixture:
        m, n = rec["m"], rec["n"]
        gating = rec["role"] != "diagnostic" and which == "remark2"
        label = "A" if which == "remark1" else "D"
        try:
            if which == "remark2":
                seq = cache.get(n) or cache.setdefault(n, remark2_D(n, mtop))
                value = seq(m)
            elif reindex:
                seq = cache.get(n) or cache.setdefault(n, thm4_phi(n, mtop, extend_n1=(n == 1)))
                value = census(seq, m, "fixed")[1]
                label = "A-reindexed"
            else:
                seq = cache.get(n) or cache.setdefault(n, remark1_A(n, mtop))
                value = seq(m)
        except (DomainError, DivisibilityViolation) as exc:
            rows.append(ReportRow(label, n, m, None, None, str(rec["value"]), "fixture", "error",
                                  str(exc), gating))
            continue
        status = "ok" if value == rec["value"] else "mismatch"
        rows.append(ReportRow(label, n, m, None, str(value), str(rec["value"]), "fixture", status,
                              "gating" if gating else "diagnostic", gating))
    if which == "remark1" and any(r["n"] == 1 for r in fixture):
        click.echo(f"note: {N1_EXTENSION_NOTE}", err=True)
    sys.exit(_emit_report(rows, fmt))


def _crosscheck_one(n: int, kmax: int, budget: int) -> list[ReportRow]:
    rec = thm3_phi(n, kmax)
    table = edge_counts(n, kmax)
    try:
        oracle = oracle_sequence(make_fn(n), kmax, 1, budget)
    except BudgetExceeded as exc:
        return [ReportRow("crosscheck", n, None, None, None, None, "none", "error", f"budget: {exc}")]
    rows = []
    for k in range(1, kmax + 1):
        r, s, o = rec(k), fixed_count_symbolic(n, k, table), oracle(k)
        status = "ok" if r == s == o else "mismatch"
        rows.append(ReportRow("crosscheck", n, None, k, str(r), f"symbolic={s};oracle={o}",
                              "formula", status, ""))
    return rows


@main.command("crosscheck")
@click.option("--n", "nrange", type=RANGE, default="3..6", show_default=True)
@click.option("--kmax", type=int, default=15, show_default=True)
@click.option("--budget", type=int, default=DEFAULT_LAP_BUDGET, show_default=True,
              help="Maximum lap count for the rational oracle.")
@click.option("--jobs", type=int, default=1, show_default=True)
@FORMAT
def cmd_crosscheck(nrange, kmax, budget, jobs, fmt):
    """Recurrence vs symbolic count vs rational oracle for f_n^k(x) = x."""
    if min(nrange, default=3) < 3:
        raise click.BadParameter("n must be >= 3", param_hint="--n")
    chunks = _run_jobs(_crosscheck_one, [(n, kmax, budget) for n in nrange], jobs)
    rows = [r for chunk in chunks for r in chunk]
    code = _emit_report(rows, fmt)
    if any(r.status == "error" and r.detail.startswith("budget") for r in rows):
        code = EXIT_BUDGET
    sys.exit(code)


def _decimal(q: Fraction, places: int) -> str:
    with localcontext() as ctx:
        ctx.prec = places + 10
        return str((Decimal(q.numerator) / Decimal(q.denominator)).quantize(Decimal(1).scaleb(-places)))


@main.command("roots")
@click.option("--kind", type=click.Choice(["alpha", "beta", "gamma"]), required=True)
@click.option("--n", "nrange", type=RANGE, required=True)
@click.option("--tol", default="1e-12", show_default=True)
@FORMAT
def cmd_roots(kind, nrange, tol, fmt):
    """Certified brackets for the dominant positive root."""
    try:
        tol_q = Fraction(tol)
    except ValueError:
        raise click.BadParameter(f"not a number: {tol}", param_hint="--tol") from None
    if tol_q <= 0:
        raise click.BadParameter("must be positive", param_hint="--tol")
    places = max(1, len(str(tol_q.denominator // max(tol_q.numerator, 1))) - 1)
    records = []
    for n in nrange:
        try:
            b = dominant_root(kind, n, tol_q)
        except DomainError as exc:
            raise click.UsageError(str(exc)) from None
        records.append({"kind": kind, "n": str(n), "polynomial": str(b.poly),
                        "lo": _decimal(b.lo, places + 3), "hi": _decimal(b.hi, places + 3),
                        "estimate": _decimal((b.lo + b.hi) / 2, places), "tol": tol})
    _write_records(records, ("kind", "n", "polynomial", "lo", "hi", "estimate", "tol"), fmt)


@main.command("rep")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--cells", is_flag=True, help="Also print the coarse cell of every edge.")
def cmd_rep(n, k, cells):
    """Print the representation word of f_n^k."""
    if n < 3 or k < 1:
        raise click.UsageError("need n >= 3 and k >= 1")
    alphabet, word = base_representation(make_fn(n))
    rules = derive_rules(alphabet, word)
    try:
        for _ in range(k - 1):
            word = iterate_word(word, rules, budget=REP_MAX_LENGTH)
    except BudgetExceeded as exc:
        click.echo(f"refusing: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    click.echo(str(word))
    if cells:
        click.echo(" ".join(map(str, word.cells)))


@main.command("conjectures")
@click.option("--which", type=click.Choice(["remark1", "remark2"]), required=True)
@click.option("--n", "nrange", type=RANGE, required=True)
@click.option("--m", "mrange", type=RANGE, required=True)
@click.option("--k", "krange", type=RANGE, required=True)
@FORMAT
def cmd_conjectures(which, nrange, mrange, krange, fmt):
    """Check the observed patterns of A/B (remark1) or D/E (remark2); never gates."""
    report = conjecture_report(which, nrange, mrange, krange)
    for note in report.notes:
        click.echo(f"note: {note}", err=True)
    records = [{"claim": r.claim, "clause": r.clause, "checked": r.checked,
                "holds": "yes" if r.holds else "no", "counterexample": r.counterexample or ""}
               for r in report.rows]
    _write_records(records, ("claim", "clause", "checked", "holds", "counterexample"), fmt)


if __name__ == "__main__":  # pragma: no cover
    main()
