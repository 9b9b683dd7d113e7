"""Command-line interface.

::

    filmseries roots   --reference [--n-roots 25] [--out DIR] [--format csv|markdown]
    filmseries verify  {1,2,3} --reference [--p P ...] [--n-terms N] [--tol T]
    filmseries verify  3 [--p P ...]            (no model constants needed)
    filmseries profile {a,theta} --gamma G --epsilon E [--x X ...] [--tau T ...]
    filmseries all     --reference --out DIR

Model constants come from ``--gamma/--epsilon``, ``--w1/--beta-s/--epsilon``,
``--reference`` (gamma = -0.03421, epsilon = 2.64489e-3) or a ``--config`` file
of ``key = value`` lines (``#`` comments; keys ``w1 w2 beta_s epsilon gamma``
plus any long option name, e.g. ``n_roots = 40``).  Flags override the file.

Exit status: 0 all checks pass, 1 a numerical check failed, 2 usage error.
"""

import argparse
import math
import sys
from pathlib import Path

from . import checks
from .eigen import find_roots, load_table1_fixture, read_eigenset_csv, write_eigenset_csv
from .exceptions import ConfigError, FilmSeriesError
from .params import REFERENCE_EPSILON, REFERENCE_GAMMA, derive, params_from_mapping, parse_config
from .profiles import ProfileRequest, concentration, temperature, write_profile_csv
from .tables import (
    DEFAULT_P_GRID,
    comparison_report,
    report_to_csv,
    report_to_markdown,
    table1_to_markdown,
    write_tables,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

#: default relative LHS/RHS tolerance per formula for ``verify``
DEFAULT_TOL = {1: 0.025, 2: 0.005, 3: 1e-5}
DEFAULT_N_TERMS = {1: 25, 2: 25, 3: 10_000}
FIXTURE_SIZE = 25


class UsageError(Exception):
    pass


def _common(parser):
    g = parser.add_argument_group("model constants")
    g.add_argument("--config", type=Path, help="key = value file")
    g.add_argument("--reference", action="store_true", help="use gamma = -0.03421, epsilon = 2.64489e-3")
    g.add_argument("--gamma", type=float)
    g.add_argument("--epsilon", type=float)
    g.add_argument("--w1", type=float)
    g.add_argument("--w2", type=float)
    g.add_argument("--beta-s", dest="beta_s", type=float)
    o = parser.add_argument_group("numerics and output")
    o.add_argument("--n-roots", type=int)
    o.add_argument("--n-terms", type=int)
    o.add_argument("--roots-source", help="solver, fixture, or a CSV path")
    o.add_argument("--tol", type=float)
    o.add_argument("--format", choices=("csv", "markdown"))
    o.add_argument("--out", type=Path, help="output directory (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="filmseries",
        description="Eigenvalues, series identities and table regeneration "
        "for the coupled heat/mass film-penetration model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("roots", help="positive roots of the eigenvalue equation")
    _common(p)
    p = sub.add_parser("verify", help="compare series and closed form of formula 1, 2 or 3")
    p.add_argument("formula", type=int, choices=(1, 2, 3))
    p.add_argument("--p", dest="p", type=float, action="append", help="Laplace parameter (repeatable)")
    _common(p)
    p = sub.add_parser("profile", help="concentration (a) or temperature (theta) profile")
    p.add_argument("kind", choices=("a", "theta"))
    p.add_argument("--x", dest="x", type=float, action="append")
    p.add_argument("--tau", dest="tau", type=float, action="append")
    _common(p)
    p = sub.add_parser("all", help="regenerate tables 1-3 and run every check")
    _common(p)
    return parser


def _settings(args, need_params=True):
    """Merge config file values with flags (flags win)."""
    values = {}
    if args.config is not None:
        try:
            values.update(parse_config(args.config.read_text()))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    if args.reference:
        values.update(gamma=REFERENCE_GAMMA, epsilon=REFERENCE_EPSILON)
        for k in ("w1", "beta_s"):
            values.pop(k, None)
    for key in ("gamma", "epsilon", "w1", "w2", "beta_s"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    if args.gamma is not None and args.w1 is None:
        values.pop("w1", None)
        values.pop("beta_s", None)
    for key in ("n_roots", "n_terms", "roots_source", "tol", "format", "out"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    have = "epsilon" in values and ({"gamma"} <= values.keys() or {"w1", "beta_s"} <= values.keys())
    if need_params and not have:
        raise UsageError("model constants required: --reference, --gamma/--epsilon, "
                         "--w1/--beta-s/--epsilon, or --config")
    return values


def _int(values, key, default):
    try:
        return int(values.get(key, default))
    except ValueError:
        raise ConfigError(f"{key} must be an integer") from None


def _is_reference(d):
    return d.gamma == REFERENCE_GAMMA and d.epsilon == REFERENCE_EPSILON


def _roots(values, d, n_needed, default_source):
    source = str(values.get("roots_source", default_source))
    if source == "fixture":
        if not _is_reference(d):
            raise UsageError("fixture roots exist only for gamma = -0.03421, epsilon = 2.64489e-3")
        if n_needed > FIXTURE_SIZE:
            raise UsageError(f"the fixture has {FIXTURE_SIZE} roots; {n_needed} terms requested")
        return load_table1_fixture(d)
    if source == "solver":
        return find_roots(d, max(n_needed, _int(values, "n_roots", 25)))
    es = read_eigenset_csv(source, d)
    if n_needed > len(es):
        raise UsageError(f"{source} has {len(es)} roots; {n_needed} terms requested")
    return es


def _emit(text, values, filename):
    out = values.get("out")
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / filename).write_text(text)
    print(f"wrote {out / filename}")


def _markdown(values):
    return values.get("format", "csv") == "markdown"


def cmd_roots(args, values, params):
    d = derive(params)
    es = find_roots(d, _int(values, "n_roots", 25))
    if _markdown(values):
        _emit(table1_to_markdown(es), values, "table1.md")
    else:
        _emit(write_eigenset_csv(es), values, "table1.csv")
    return EXIT_OK


def cmd_verify(args, values, params):
    formula = args.formula
    d = derive(params) if params is not None else None
    n_terms = _int(values, "n_terms", DEFAULT_N_TERMS[formula])
    p_values = args.p or DEFAULT_P_GRID
    if any(not (p > 0 and math.isfinite(p)) for p in p_values):
        raise UsageError("--p values must be positive and finite")
    roots = None
    if formula != 3:
        roots = _roots(values, d, n_terms, "fixture" if _is_reference(d) else "solver")
    report = comparison_report(formula, d, p_values, roots, n_terms)
    tol = float(values.get("tol", DEFAULT_TOL[formula]))
    stem = {1: "table2", 2: "table3", 3: "formula3"}[formula]
    if _markdown(values):
        _emit(report_to_markdown(report), values, stem + ".md")
    else:
        _emit(report_to_csv(report), values, stem + ".csv")
    failing = [r for r in report.rows if r.rel_diff_pct > 100.0 * tol]
    for r in failing:
        print(f"p = {r.p:g}: relative discrepancy {r.rel_diff_pct:.4g} % exceeds {100 * tol:g} %",
              file=sys.stderr)
    return EXIT_CHECK_FAILED if failing else EXIT_OK


def cmd_profile(args, values, params):
    d = derive(params)
    n_terms = _int(values, "n_terms", 25)
    es = _roots(values, d, n_terms, "solver")
    xs = args.x or [0.0, 0.25, 0.5, 0.75, 1.0]
    taus = args.tau or [0.01, 0.1, 1.0]
    fn = concentration if args.kind == "a" else temperature
    points = []
    for tau in taus:
        for x in xs:
            try:
                points.append(fn(ProfileRequest(params, x, tau, n_terms, es)))
            except FilmSeriesError as exc:
                raise UsageError(f"x = {x!r}, tau = {tau!r}: {exc}") from None
    _emit(write_profile_csv(points), values, f"profile_{args.kind}.csv")
    return EXIT_OK


def cmd_all(args, values, params):
    d = derive(params)
    out = Path(values.get("out", "."))
    fmt = "markdown" if _markdown(values) else "csv"
    if _is_reference(d):
        fixture = load_table1_fixture(d)
    else:
        fixture = find_roots(d, _int(values, "n_terms", 25))
    for path in write_tables(out, d, fixture, _int(values, "n_roots", 25),
                             _int(values, "n_terms", 25), fmt):
        print(f"wrote {path}")
    results = checks.run_all()
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


COMMANDS = {"roots": cmd_roots, "verify": cmd_verify, "profile": cmd_profile, "all": cmd_all}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        formula3 = args.command == "verify" and args.formula == 3
        values = _settings(args, need_params=not formula3)
        has_constants = "epsilon" in values
        params = params_from_mapping(values) if has_constants or not formula3 else None
        return COMMANDS[args.command](args, values, params)
    except (UsageError, ConfigError) as exc:
        print(f"filmseries: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FilmSeriesError as exc:
        print(f"filmseries: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
