"""Command-line front end: ``seq``, ``eval``, ``verify`` and ``mu``.

Every command builds a :class:`Report` and exits 0 when all of its checks pass,
1 when any check fails and 2 on usage errors.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import click

from . import diophantine as dio
from . import sequences as seqs
from . import series
from .enclosure import decimal_preview, format_rational

PREVIEW_DIGITS = 50
EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

MU_BANDS = {
    "F": (2.0, 2.5),
    "S": (2.0, 2.5),
    "golden": (2.0, 2.25),
    "liouville": (5.0, math.inf),
}
MU_DEFAULT_WINDOW = {"F": 10, "S": 10, "golden": 5, "liouville": 1}
MU_DEFAULT_QUOTIENTS = {"F": 64, "S": 64, "golden": 30}
LIOUVILLE_DEFAULT_J = 6


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    timing: float | None = None

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        if any(c.name == name for c in self.checks):
            raise ValueError(f"duplicate check name {name!r}")
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_CHECK_FAILED

    def to_lines(self, include_timing: bool = True) -> str:
        records = [{"record": "command", "command": self.command}]
        records += [{"record": "input", "name": k, "value": v} for k, v in self.inputs.items()]
        records += [{"record": "result", "name": k, "value": v} for k, v in self.results.items()]
        records += [
            {"record": "check", "name": c.name, "passed": c.passed, "detail": c.detail}
            for c in self.checks
        ]
        records.append({"record": "summary", "passed": self.passed})
        if include_timing and self.timing is not None:
            records.append({"record": "timing", "seconds": round(self.timing, 3)})
        return "\n".join(json.dumps(r, sort_keys=True, ensure_ascii=False) for r in records)

    def to_table(self, include_timing: bool = True) -> str:
        out = [f"== {self.command} =="]
        for k, v in self.inputs.items():
            out.append(f"  {k}: {v}")
        for k, v in self.results.items():
            if isinstance(v, dict) and "columns" in v:
                out.append(f"{k}:")
                out.extend("  " + line for line in _render_table(v["columns"], v["rows"]))
                if v.get("omitted"):
                    out.append(f"  ... {v['omitted']} more rows omitted")
            elif isinstance(v, dict):
                out.append(f"{k}:")
                out.extend(f"  {kk}: {vv}" for kk, vv in v.items())
            else:
                out.append(f"{k}: {v}")
        out.append("checks:")
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            out.append(f"  [{mark}] {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        out.append("result: " + ("PASS" if self.passed else "FAIL"))
        if include_timing and self.timing is not None:
            out.append(f"runtime: {self.timing:.3f} s")
        return "\n".join(out)


def _abbrev(value, limit: int = 40) -> str:
    text = str(value)
    if len(text) <= limit:
        return text
    return f"{text[:16]}...{text[-8:]} ({len(text.lstrip('-'))} digits)"


def _render_table(columns, rows):
    cells = [list(map(str, columns))] + [[_abbrev(c) for c in r] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def _enclosure_payload(enc) -> dict:
    payload = enc.to_dict()
    for key in ("lo", "hi", "width"):
        value = getattr(enc, key)
        payload[f"{key}_decimal_preview"] = decimal_preview(value, PREVIEW_DIGITS) + " (non-authoritative)"
    return payload


# -- report builders (importable without the click layer) -------------------


def run_seq(range_end: int, max_rows: int = 64) -> Report:
    if range_end < 1:
        raise ValueError("range_end must be >= 1")
    report = Report("seq", {"range_end": range_end})
    start = time.perf_counter()
    oracle = seqs.series_coefficients(range_end)
    rows, mismatches = [], []
    for n in range(1, range_end + 1):
        fm = seqs.f_multiplicative(n)
        fd = seqs.f_difference(n)
        fo = oracle[n]
        if not fm == fd == fo:
            mismatches.append(n)
        if len(rows) < max_rows:
            rows.append([n, seqs.s2(n), fm, fd, fo])
    report.timing = time.perf_counter() - start
    report.results["table"] = {
        "columns": ["n", "s2(n)", "f_mult", "f_diff", "f_oracle"],
        "rows": rows,
        "omitted": range_end - len(rows),
    }
    detail = "all agree" if not mismatches else f"first mismatch at n={mismatches[0]}"
    report.check("triple-equality", not mismatches, detail)
    return report


def run_eval(base: int, which: str, terms: int) -> Report:
    report = Report("eval", {"base": base, "which": which, "terms": terms})
    if which == "F":
        enc = series.eval_F(base, terms)
    elif which == "S":
        enc = series.eval_S(base, terms)
    elif which == "fermat":
        enc = series.fermat_reciprocal_sum(terms)
    elif which == "liouville":
        enc = series.liouville_partial(terms)
    else:
        raise ValueError(f"unknown series {which!r}")
    report.results["enclosure"] = _enclosure_payload(enc)
    report.check("enclosure-ordered", enc.lo <= enc.hi, f"width={format_rational(enc.width)}")
    return report


def run_verify(base: int, precision: int, corrupt: bool = False, degree: int = 4096) -> Report:
    report = Report(
        "verify", {"base": base, "precision": precision, "degree": degree, "corrupt": corrupt}
    )
    rel = series.verify_relation(base, precision, corrupt=corrupt)
    report.results["relation"] = {
        "f_terms": rel.f_terms,
        "s_terms": rel.s_terms,
        "threshold": format_rational(rel.threshold),
        "scaled_F_lo_preview": decimal_preview(rel.scaled_F.lo, PREVIEW_DIGITS),
        "S_lo_preview": decimal_preview(rel.S.lo, PREVIEW_DIGITS),
        "gap": format_rational(rel.gap),
    }
    report.check(
        "special-value-relation",
        rel.holds,
        "enclosures intersect" if rel.holds else f"disjoint, gap={decimal_preview(rel.gap, 12)}",
    )
    report.check("formal-identity", series.formal_identity_check(degree), f"degree={degree}")
    return report


def run_mu(
    which: str,
    base: int = 2,
    quotients: int | None = None,
    window_start: int | None = None,
    terms: int | None = None,
) -> Report:
    if window_start is None:
        window_start = MU_DEFAULT_WINDOW[which]
    if quotients is None:
        quotients = MU_DEFAULT_QUOTIENTS.get(which)
    inputs = {"which": which, "window_start": window_start}
    if which in ("F", "S"):
        inputs.update(base=base, quotients=quotients)
    elif which == "golden":
        inputs["quotients"] = quotients
    else:
        terms = LIOUVILLE_DEFAULT_J if terms is None else terms
        inputs["terms"] = terms
    report = Report("mu", inputs)

    if which in ("F", "S"):
        try:
            prefix, enc = dio.certified_prefix_for_constant(base, which, quotients)
        except dio.InsufficientPrefixError as exc:
            report.check("certified-prefix", False, f"insufficient certified quotients: {exc}")
            return report
        report.results["enclosure"] = enc.to_dict()
        report.check("certified-prefix", True, f"{len(prefix)} quotients certified")
    elif which == "golden":
        prefix = dio.golden_cf(quotients)
        report.results["note"] = "synthetic all-ones CF, calibration only"
    else:
        prefix = dio.certified_cf_prefix(series.liouville_partial(terms))
        report.check("certified-prefix", len(prefix) >= window_start + 2, f"{len(prefix)} quotients certified")

    est = dio.estimate_mu(prefix, window_start)
    table = dio.convergents(prefix)
    report.results["cf_prefix"] = str(prefix)
    report.results["convergents"] = {
        "columns": ["k", "a_k", "p_k", "q_k"],
        "rows": [[k, a, p, q] for k, (a, (p, q)) in enumerate(zip(prefix.quotients, table.entries))],
    }
    report.results["ratios"] = {
        "columns": ["k", "ln q_{k+1} / ln q_k"],
        "rows": [[k, f"{r:.6f}"] for k, r in est.ratios],
    }
    report.results["mu_hat"] = f"{est.mu_hat:.6f}"
    lo, hi = MU_BANDS[which]
    report.results["band"] = f"({lo}, {hi})"
    report.check("mu-band", lo < est.mu_hat < hi, f"mu_hat={est.mu_hat:.6f} at k={est.argmax}")
    return report


# -- click layer -------------------------------------------------------------


def _emit(report: Report, fmt: str) -> None:
    click.echo(report.to_lines() if fmt == "lines" else report.to_table())
    raise SystemExit(report.exit_code)


def _guard(fn, *args, **kwargs) -> Report:
    try:
        return fn(*args, **kwargs)
    except (ValueError, TypeError) as exc:
        raise click.UsageError(str(exc)) from exc


format_option = click.option(
    "--format", "fmt", type=click.Choice(["table", "lines"]), default="table", show_default=True,
    help="Human-readable table or one JSON record per line.",
)


@click.group()
def cli():
    """Binary digit-sum series, Fermat reciprocals and irrationality exponents."""


@cli.command("seq")
@click.argument("range_end", type=int)
@click.option("--max-rows", type=int, default=64, show_default=True, help="Rows shown in the table.")
@format_option
def seq_cmd(range_end, max_rows, fmt):
    """Cross-check the three routes for f(n) on [1, RANGE_END]."""
    _emit(_guard(run_seq, range_end, max_rows), fmt)


@cli.command("eval")
@click.argument("which", type=click.Choice(["F", "S", "fermat", "liouville"]))
@click.option("--base", type=int, default=2, show_default=True)
@click.option("--terms", type=int, default=4, show_default=True)
@format_option
def eval_cmd(which, base, terms, fmt):
    """Print a certified enclosure of F(1/b), S(1/b), sum 1/F_n or the Liouville constant."""
    _emit(_guard(run_eval, base, which, terms), fmt)


@cli.command("verify")
@click.option("--base", type=int, default=2, show_default=True)
@click.option("--precision", type=int, default=series.DEFAULT_PRECISION, show_default=True)
@click.option("--degree", type=int, default=4096, show_default=True)
@click.option("--corrupt", is_flag=True, hidden=True)
@format_option
def verify_cmd(base, precision, degree, corrupt, fmt):
    """Check S(1/b) = b/(b-1) F(1/b) and F(x) = (1-x) S(x)."""
    _emit(_guard(run_verify, base, precision, corrupt, degree), fmt)


@cli.command("mu")
@click.argument("which", type=click.Choice(["F", "S", "liouville", "golden"]))
@click.option("--base", type=int, default=2, show_default=True)
@click.option("--quotients", type=int, default=None, help="Certified quotients to use.")
@click.option("--window-start", type=int, default=None)
@click.option("--terms", type=int, default=None, help="Liouville truncation J.")
@format_option
def mu_cmd(which, base, quotients, window_start, terms, fmt):
    """Estimate the irrationality exponent from a certified CF prefix."""
    _emit(_guard(run_mu, which, base, quotients, window_start, terms), fmt)


def main():
    cli(prog_name="s2series")


if __name__ == "__main__":
    main()
