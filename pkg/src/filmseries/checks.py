"""End-to-end checks of the reproduced tables and identities.

Each ``criterion_*`` function returns a :class:`CheckResult`;
:func:`run_all` runs them in order.  The command-line ``all`` command
exits non-zero unless every check passes.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .eigen import find_roots, load_table1_fixture
from .params import ModelParams, derive, reference_params
from .profiles import (
    ProfileRequest,
    concentration,
    coupling_residuals,
    temperature,
    termwise_transform_check,
)
from .series import (
    bernoulli_series,
    formula2_terms,
    formula3_lhs,
    formula3_rhs,
    formula3_terms,
    ozisik_lhs,
    ozisik_rhs,
)
from .tables import printed_table, table2, table3, truncation_experiment

__all__ = ["CheckResult", "PRINTED_ROOTS", "PI_COTH_PI_BRUTE_FORCE", "run_all"]

#: 1 + 2 sum_{n<=10^7} 1/(1+n^2) + 2 atan(10^-7), summed with math.fsum
PI_COTH_PI_BRUTE_FORCE = 3.1533480949371726

PRINTED_ROOTS = (
    3.0371, 6.0715, 9.1001, 12.1199, 15.1273, 18.1187, 21.0910, 24.0425, 26.9750,
    29.8947, 32.8119, 35.7377, 38.6803, 41.6435, 44.6269, 47.6277, 50.6424, 53.6676,
    56.6998, 59.7361, 62.7735, 65.8094, 68.8409, 71.8650, 74.8783,
)


@dataclass(frozen=True)
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title}: {self.detail}"


def _reference():
    return derive(reference_params())


def criterion_1():
    d = _reference()
    t0 = time.perf_counter()
    es = find_roots(d, 25)
    elapsed = time.perf_counter() - t0
    dev = max(abs(a - b) for a, b in zip(es.roots, PRINTED_ROOTS))
    worst = max(es.residual_pct)
    ok = dev <= 0.01 and worst <= 1e-6 and elapsed < 1.0
    return CheckResult(
        1, "Table 1 roots", ok,
        f"max |q - printed| = {dev:.2e}, max residual = {worst:.1e} %, {elapsed:.3f} s",
    )


def criterion_2():
    d = _reference()
    t0 = time.perf_counter()
    rep = table2(d, roots=load_table1_fixture(d), n_terms=25)
    elapsed = time.perf_counter() - t0
    printed = printed_table(2)
    lhs_err = max(abs(r.lhs - pl) for r, (_, pl, _) in zip(rep.rows, printed))
    rhs_err = max(abs(r.rhs - pr) for r, (_, _, pr) in zip(rep.rows, printed))
    band = max(r.rel_diff_pct for r in rep.rows if r.p >= 1e5)
    ok = lhs_err <= 1e-4 and rhs_err <= 1e-5 and 1.5 <= band <= 2.5 and elapsed < 1.0
    return CheckResult(
        2, "Table 2 (formula 1)", ok,
        f"max LHS err = {lhs_err:.2e} (tol 1e-4), max RHS err = {rhs_err:.2e} (tol 1e-5), "
        f"large-p discrepancy = {band:.2f} %, {elapsed:.3f} s",
    )


def criterion_3():
    d = _reference()
    t0 = time.perf_counter()
    rep = table3(d, roots=load_table1_fixture(d), n_terms=25)
    elapsed = time.perf_counter() - t0
    printed = printed_table(3)
    rel = max(
        max(abs(r.lhs - pl) / abs(pl), abs(r.rhs - pr) / abs(pr))
        for r, (_, pl, pr) in zip(rep.rows, printed)
    )
    low = max(r.rel_diff_pct for r in rep.rows if r.p <= 1.0)
    high = [r.abs_diff for r in rep.rows if r.p >= 1e2]
    monotone = all(b > a for a, b in zip(high, high[1:]))
    last = rep.rows[-1]
    ratio = last.rhs / last.lhs
    ok = rel <= 1e-3 and low < 0.5 and monotone and 18.0 <= ratio <= 19.5 and elapsed < 1.0
    return CheckResult(
        3, "Table 3 (formula 2)", ok,
        f"max rel err = {rel:.2e}, discrepancy(p<=1) = {low:.3f} %, "
        f"monotone(p>=100) = {monotone}, rhs/lhs(1e6) = {ratio:.3f}",
    )


def criterion_4():
    d = _reference()
    fixture = load_table1_fixture(d)
    (_, d20), (_, d25) = truncation_experiment(d, 1e3, fixture, [20, 25])
    solver = find_roots(d, 400)
    diffs = [e for _, e in truncation_experiment(d, 1e3, solver, [25, 100, 400])]
    decreasing = all(b < a for a, b in zip(diffs, diffs[1:]))
    ok = d20 > d25 and decreasing
    return CheckResult(
        4, "Truncation experiment", ok,
        f"N=20: {d20:.4f} > N=25: {d25:.4f}; solver N=25/100/400: "
        + " > ".join(f"{e:.4f}" for e in diffs),
    )


def criterion_5():
    val = formula3_lhs(math.pi**2, 1_000_000, tail_correction=True).value
    err = abs(val - PI_COTH_PI_BRUTE_FORCE)
    return CheckResult(5, "pi coth pi", err <= 1e-10, f"|lhs - oracle| = {err:.1e}")


def criterion_6():
    # 2 (p/pi^2)^N < 1e-15 at p = 9.8 needs N ~ 5000
    errs = [abs(bernoulli_series(p, 5000).value - formula3_rhs(p)) for p in (0.1, 1.0, 5.0, 9.8)]
    flag = bernoulli_series(12.0, 40).diverging
    ok = max(errs) <= 1e-12 and flag
    return CheckResult(
        6, "Bernoulli expansion", ok, f"max err = {max(errs):.1e}, diverging(p=12) = {flag}"
    )


def criterion_7():
    exact = ozisik_rhs(1, 1.0, 1.0, 0.5)
    e1 = abs(ozisik_lhs(1, 1.0, 1.0, 0.5, 100_000).value - exact)
    e2 = abs(ozisik_lhs(1, 1.0, 1.0, 0.5, 200_000).value - exact)
    ratio = e1 / e2
    ok = e1 <= 1e-4 and 2.0 / 1.5 <= ratio <= 2.0 * 1.5
    return CheckResult(7, "Sine-series rectangle formula", ok, f"err = {e1:.2e}, halving ratio = {ratio:.3f}")


def criterion_8():
    params = reference_params()
    d = derive(params)
    es = find_roots(d, 25)
    worst = 0.0
    for tau in (0.01, 0.1, 1.0):
        worst = max(worst, *map(abs, coupling_residuals(tau, params, es, 25)))
    edge = []
    for n in (1, 5, 25):
        for tau in (0.0, 0.01, 1.0):
            req = ProfileRequest(params, 1.0, tau, n, es)
            edge += [concentration(req).value, temperature(req).value]
    ok = worst <= 1e-12 * params.w2 and all(v == 0.0 for v in edge)
    return CheckResult(
        8, "Boundary identities", ok,
        f"max coupling residual = {worst:.1e}, x=1 exactly zero = {all(v == 0.0 for v in edge)}",
    )


def criterion_9():
    params = ModelParams.from_gamma(0.0, reference_params().epsilon)
    d = derive(params)
    q = np.arange(1, 51) * math.pi
    worst = 0.0
    for p in (0.1, 1.0, 100.0):
        t2 = formula2_terms(p, d, q)
        t3 = formula3_terms(p, 50)
        worst = max(worst, float(max(abs(t2 - t3) / abs(t3))))
    return CheckResult(9, "gamma = 0 reduction", worst <= 1e-14, f"max term rel err = {worst:.1e}")


def criterion_10():
    params = reference_params()
    d = derive(params)
    es = find_roots(d, 400)
    worst25 = worst400 = 0.0
    for x in (0.0, 0.25, 0.5, 0.75):
        for p in (1e-2, 1e-1, 1.0):
            s25, c = termwise_transform_check(x, p, params, es, 25)
            s400, _ = termwise_transform_check(x, p, params, es, 400)
            worst25 = max(worst25, abs(s25 - c) / abs(c))
            worst400 = max(worst400, abs(s400 - c) / abs(c))
    ok = worst25 <= 1e-4 and worst400 <= 1e-6
    return CheckResult(
        10, "Transform cross-check", ok, f"N=25: {worst25:.1e}, N=400: {worst400:.1e}"
    )


CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
)


def run_all():
    return [c() for c in CRITERIA]
