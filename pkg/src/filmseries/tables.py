"""Regeneration of the root table and the two LHS/RHS comparison tables."""

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .eigen import find_roots, write_eigenset_csv
from .exceptions import InsufficientRootsError
from .series import (
    FormulaOperands,
    formula1_lhs,
    formula1_rhs,
    formula2_lhs,
    formula2_rhs,
    formula3_lhs,
    formula3_rhs,
)

__all__ = [
    "DEFAULT_P_GRID",
    "ComparisonRow",
    "VerificationReport",
    "Table1Report",
    "table1",
    "table2",
    "table3",
    "formula3_report",
    "comparison_report",
    "truncation_experiment",
    "printed_table",
    "report_to_csv",
    "report_to_markdown",
    "table1_to_markdown",
    "write_tables",
]

#: 10^-4 ... 10^6, the eleven decades of the printed comparison tables
DEFAULT_P_GRID = tuple(10.0**k for k in range(-4, 7))


@dataclass(frozen=True)
class ComparisonRow:
    p: float
    lhs: float
    rhs: float
    abs_diff: float
    rel_diff_pct: float

    @classmethod
    def of(cls, p, lhs, rhs):
        diff = abs(lhs - rhs)
        rel = 100.0 * diff / abs(rhs) if rhs != 0.0 else math.inf
        return cls(p, lhs, rhs, diff, rel)


@dataclass(frozen=True)
class VerificationReport:
    formula: int
    gamma: float
    epsilon: float
    roots_source: str
    n_terms: int
    rows: tuple

    @property
    def max_rel_diff_pct(self):
        return max(r.rel_diff_pct for r in self.rows)


@dataclass(frozen=True)
class Table1Report:
    eigenset: object

    def to_csv(self):
        return write_eigenset_csv(self.eigenset)

    def to_markdown(self):
        return table1_to_markdown(self.eigenset)


def table1(d, n=25):
    """Solver roots and residual percentages for the first *n* roots."""
    return Table1Report(find_roots(d, n))


def comparison_report(formula, d, p_values=DEFAULT_P_GRID, roots=None, n_terms=25):
    """LHS/RHS comparison of formula 1, 2 or 3 over *p_values*.

    Formula 3 ignores *roots* and uses ``q_n = n pi`` with the integral
    tail correction.
    """
    rows = []
    for p in sorted(float(p) for p in p_values):
        if formula == 3:
            lhs = formula3_lhs(p, n_terms).value
            rhs = formula3_rhs(p)
        else:
            op = FormulaOperands(p, d, roots)
            if formula == 1:
                lhs, rhs = formula1_lhs(op, n_terms).value, formula1_rhs(p, d)
            elif formula == 2:
                lhs, rhs = formula2_lhs(op, n_terms).value, formula2_rhs(p, d)
            else:
                raise ValueError(f"unknown formula {formula!r}")
        rows.append(ComparisonRow.of(p, lhs, rhs))
    if formula == 3:
        # the gamma = 0 identity; epsilon plays no part
        return VerificationReport(3, 0.0, None, "n pi", n_terms, tuple(rows))
    return VerificationReport(formula, d.gamma, d.epsilon, roots.source, n_terms, tuple(rows))


def table2(d, p_values=DEFAULT_P_GRID, roots=None, n_terms=25):
    """Formula 1 comparison (the printed Table 2 uses the fixture roots, N = 25)."""
    return comparison_report(1, d, p_values, roots, n_terms)


def table3(d, p_values=DEFAULT_P_GRID, roots=None, n_terms=25):
    """Formula 2 comparison (the printed Table 3 uses the fixture roots, N = 25)."""
    return comparison_report(2, d, p_values, roots, n_terms)


def formula3_report(p_values=DEFAULT_P_GRID, n_terms=10_000):
    return comparison_report(3, None, p_values, None, n_terms)


def truncation_experiment(d, p, roots, n_values):
    """``[(N, |formula-2 LHS_N - RHS|), ...]`` at a fixed *p*."""
    need = max(n_values)
    if need > len(roots):
        raise InsufficientRootsError(f"N = {need} needs more than the {len(roots)} roots given")
    op = FormulaOperands(p, d, roots)
    rhs = formula2_rhs(p, d)
    return [(n, abs(formula2_lhs(op, n).value - rhs)) for n in n_values]


def printed_table(number):
    """Printed values of Table 2 or 3 as a list of ``(p, lhs, rhs)``."""
    name = {2: "printed_table2.csv", 3: "printed_table3.csv"}[number]
    with resources.files("filmseries.data").joinpath(name).open("r", newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return [(float(r["p"]), float(r["lhs"]), float(r["rhs"])) for r in csv.DictReader(lines)]


def report_to_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "lhs", "rhs", "abs_diff", "rel_diff_pct"])
    for r in report.rows:
        writer.writerow([f"{v:.17g}" for v in (r.p, r.lhs, r.rhs, r.abs_diff, r.rel_diff_pct)])
    return buf.getvalue()


def _p_label(p):
    k = math.log10(p)
    if abs(k - round(k)) < 1e-12:
        return f"10^{int(round(k))}"
    return f"{p:.6g}"


def report_to_markdown(report):
    if report.epsilon is None:
        head = f"Formula {report.formula}: q_n = n pi, N = {report.n_terms} with integral tail"
    else:
        head = (
            f"Formula {report.formula}: gamma = {report.gamma:.6g}, epsilon = {report.epsilon:.6g}, "
            f"roots = {report.roots_source}, N = {report.n_terms}"
        )
    lines = [
        head,
        "",
        "| p | LHS | RHS | rel. diff (%) |",
        "|---|---|---|---|",
    ]
    for r in report.rows:
        lines.append(f"| {_p_label(r.p)} | {r.lhs:.5f} | {r.rhs:.5f} | {r.rel_diff_pct:.3f} |")
    return "\n".join(lines) + "\n"


def table1_to_markdown(eigenset):
    d = eigenset.params
    lines = [
        f"Roots for gamma = {d.gamma:.6g}, epsilon = {d.epsilon:.6g} ({eigenset.source})",
        "",
        "| n | q_n | residual (%) |",
        "|---|---|---|",
    ]
    flagged = False
    for i, (q, res, flag) in enumerate(
        zip(eigenset.roots, eigenset.residual_pct, eigenset.residual_flags), start=1
    ):
        mark = "*" if flag else ""
        flagged |= flag
        lines.append(f"| {i} | {q:.4f} | {res:.4f}{mark} |")
    if flagged:
        lines += ["", "\\* tan(q_n) = 0; residual reported as 0 by convention."]
    return "\n".join(lines) + "\n"


def write_tables(out_dir, d, fixture, n_roots=25, n_terms=25, fmt="csv"):
    """Write table1/2/3 files into *out_dir*; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t1 = table1(d, n_roots)
    t2 = table2(d, roots=fixture, n_terms=n_terms)
    t3 = table3(d, roots=fixture, n_terms=n_terms)
    ext = "csv" if fmt == "csv" else "md"
    texts = {
        f"table1.{ext}": t1.to_csv() if fmt == "csv" else t1.to_markdown(),
        f"table2.{ext}": report_to_csv(t2) if fmt == "csv" else report_to_markdown(t2),
        f"table3.{ext}": report_to_csv(t3) if fmt == "csv" else report_to_markdown(t3),
    }
    paths = []
    for name, text in texts.items():
        path = out / name
        path.write_text(text)
        paths.append(path)
    return paths
