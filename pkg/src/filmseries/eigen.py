"""Positive roots of ``tan q = (gamma / sqrt(eps)) * tan(q * sqrt(eps))``.

The tangent form has poles, so roots are bracketed on the pole-free
characteristic

    F(q) = sqrt(eps) * sin(q) * cos(q sqrt(eps)) - gamma * cos(q) * sin(q sqrt(eps))

which is the tangent equation multiplied through by ``sqrt(eps) cos q cos(q sqrt(eps))``.
Zeros of F at which either cosine vanishes are artefacts of that
multiplication and are discarded.
"""

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from scipy import optimize

from .exceptions import (
    DomainError,
    SearchExhaustedError,
    UndefinedMetricError,
)

__all__ = [
    "DEFAULT_TOL",
    "EigenSet",
    "characteristic",
    "residual_percent",
    "table_residual",
    "scan_step",
    "refine_root",
    "find_roots",
    "default_q_max",
    "eigenset_from_roots",
    "load_table1_fixture",
    "read_eigenset_csv",
    "write_eigenset_csv",
]

DEFAULT_TOL = 1e-12
# |cos| below this at a refined zero marks a tangent pole, not a root
POLE_COS_FLOOR = 1e-12
# residual_percent refuses q closer than this to a pole of either tangent
POLE_DISTANCE = 1e-9
# tan(q) this small: the tabulated metric is 0/0-like and reported as 0
RESIDUAL_CONVENTION_TAN = 1e-10

# largest scan grid find_roots will allocate
MAX_GRID = 20_000_000

CSV_HEADER = ("n", "q_n", "residual_pct", "F_residual")


@dataclass(frozen=True)
class EigenSet:
    """Ordered positive roots with their per-root diagnostics.

    ``residual_flags[i]`` is True where ``residual_pct[i]`` was set to 0 by
    convention because ``tan q_i`` vanishes (the ``gamma = 0`` roots).
    ``source`` records where the roots came from: ``"solver"``,
    ``"fixture"`` or a file path.
    """

    params: object
    roots: tuple
    residual_pct: tuple
    pole_free_residual: tuple
    residual_flags: tuple = ()
    source: str = "solver"
    q: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        roots = tuple(float(r) for r in self.roots)
        object.__setattr__(self, "roots", roots)
        n = len(roots)
        if len(self.residual_pct) != n or len(self.pole_free_residual) != n:
            raise ValueError("diagnostic columns must match the number of roots")
        if not self.residual_flags:
            object.__setattr__(self, "residual_flags", (False,) * n)
        if n and roots[0] <= 0.0:
            raise DomainError("roots must be positive")
        if any(b <= a for a, b in zip(roots, roots[1:])):
            raise DomainError("roots must be strictly increasing")
        arr = np.array(roots, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "q", arr)

    def __len__(self):
        return len(self.roots)

    def head(self, n):
        """The first *n* roots as an array."""
        return self.q[:n]


def characteristic(q, d):
    """Pole-free form F(q) of the eigenvalue equation.  Accepts arrays."""
    qs = q * d.sqrt_eps
    return d.sqrt_eps * np.sin(q) * np.cos(qs) - d.gamma * np.cos(q) * np.sin(qs)


def _tangent_pole_distance(x):
    # distance from x to the nearest pi/2 + k*pi
    return abs(math.remainder(x - math.pi / 2, math.pi))


def residual_percent(q, d):
    """``|[tan q - (gamma/sqrt(eps)) tan(q sqrt(eps))] / tan q| * 100``.

    Raises :class:`UndefinedMetricError` where either tangent has a pole
    (within ``1e-9``) or ``|tan q| < 1e-300``.
    """
    qs = q * d.sqrt_eps
    if _tangent_pole_distance(q) < POLE_DISTANCE or _tangent_pole_distance(qs) < POLE_DISTANCE:
        raise UndefinedMetricError(f"q = {q!r} is at a tangent pole")
    t = math.tan(q)
    if abs(t) < 1e-300:
        raise UndefinedMetricError(f"tan(q) vanishes at q = {q!r}")
    return abs((t - d.ratio * math.tan(qs)) / t) * 100.0


def table_residual(q, d):
    """Residual percentage for tabulation, plus a convention flag.

    Where ``tan q`` is numerically zero (the roots ``n pi`` of the
    ``gamma = 0`` problem) the metric is reported as ``0.0`` with the flag
    set instead of raising.
    """
    if abs(math.tan(q)) < RESIDUAL_CONVENTION_TAN:
        return 0.0, True
    return residual_percent(q, d), False


def scan_step(d):
    """Uniform grid step used to isolate roots: ``min(pi, pi/sqrt(eps)) / 32``."""
    return min(math.pi, math.pi / d.sqrt_eps) / 32.0


def refine_root(d, lo, hi, max_bisections=60):
    """Refine a sign-change bracket ``[lo, hi]`` of F to a root.

    Bisection (at most *max_bisections* halvings, stopping early once the
    midpoint is no longer representable strictly inside the bracket) is
    followed by one secant step, accepted only if it stays inside the
    final bracket and does not increase |F|.
    """
    flo = float(characteristic(lo, d))
    fhi = float(characteristic(hi, d))
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise DomainError(f"[{lo!r}, {hi!r}] does not bracket a sign change")
    for _ in range(max_bisections):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fmid = float(characteristic(mid, d))
        if fmid == 0.0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    best, fbest = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
    secant = hi - fhi * (hi - lo) / (fhi - flo)
    if lo <= secant <= hi:
        fsec = float(characteristic(secant, d))
        if abs(fsec) <= abs(fbest):
            return secant
    return best


def _is_pole_artefact(q, d):
    return abs(math.cos(q)) < POLE_COS_FLOOR or abs(math.cos(q * d.sqrt_eps)) < POLE_COS_FLOOR


def _slowest_frequency(d):
    # F = (s - g)/2 sin((1+s)q) + (s + g)/2 sin((1-s)q), s = sqrt(eps);
    # its zeros are at least as dense as those of the slower sine
    slow = abs(1.0 - d.sqrt_eps)
    return slow if slow > 1e-9 else 1.0 + d.sqrt_eps


def default_q_max(d, n_roots):
    """Upper end of the root scan used when ``find_roots`` is given no *q_max*."""
    return max(4 * (n_roots + 4) * math.pi, 2 * (n_roots + 2) * math.pi / _slowest_frequency(d))


def _split_near_touch(d, lo, hi, sign):
    """Minimise sign*F on [lo, hi]; return sub-brackets if F dips across zero."""
    res = optimize.minimize_scalar(
        lambda q: sign * float(characteristic(q, d)),
        bounds=(lo, hi), method="bounded", options={"xatol": 1e-14},
    )
    if res.fun < 0.0:
        return [(lo, res.x), (res.x, hi)]
    return [(res.x, res.x)] if res.fun == 0.0 else []


def _candidates(d, grid, values):
    """Sign-change brackets of F on the grid, in increasing order.

    A local minimum of |F| with no sign change around it may hide a close
    pair of zeros inside one cell; those are split by minimisation.
    """
    out = []
    n = len(grid)
    for i in range(n - 1):
        f0, f1 = values[i], values[i + 1]
        if f0 == 0.0:
            out.append((grid[i], grid[i]))
        elif f0 * f1 < 0.0:
            out.append((grid[i], grid[i + 1]))
        elif 0 < i and f1 != 0.0 and values[i - 1] * f0 > 0.0 and (
            abs(f0) < abs(values[i - 1]) and abs(f0) < abs(f1)
        ):
            sign = 1.0 if f0 > 0 else -1.0
            out.extend(_split_near_touch(d, grid[i - 1], grid[i + 1], sign))
    out.sort()
    return out


def find_roots(d, n_roots, tol=DEFAULT_TOL, q_max=None):
    """First *n_roots* positive roots of the eigenvalue equation.

    F is sampled on a uniform grid of step :func:`scan_step` starting at
    ``q = h`` (``q = 0`` is always a zero of F but is not a root).  Each
    sign change is refined with :func:`refine_root`; zeros at tangent
    poles are dropped.  The scanned interval starts at ``(n_roots + 4) pi``
    and doubles until enough roots are found or *q_max* (default
    :func:`default_q_max`) is reached.

    Raises
    ------
    SearchExhaustedError
        If fewer than *n_roots* roots lie below *q_max*.
    """
    if n_roots < 1:
        raise DomainError("n_roots must be >= 1")
    if not tol > 0:
        raise DomainError("tol must be > 0")
    h = scan_step(d)
    if q_max is None:
        q_max = default_q_max(d, n_roots)
    top = min((n_roots + 4) * math.pi, q_max)
    while True:
        n_grid = int(math.ceil((top - h) / h)) + 1
        if n_grid > MAX_GRID:
            raise SearchExhaustedError(n_roots, len(roots), top)
        grid = h + h * np.arange(n_grid)
        grid = grid[grid <= top]
        values = characteristic(grid, d)
        roots = []
        for lo, hi in _candidates(d, grid, values):
            q = float(lo) if lo == hi else refine_root(d, float(lo), float(hi))
            if _is_pole_artefact(q, d) or abs(characteristic(q, d)) > tol:
                continue
            if roots and q - roots[-1] <= 4 * math.ulp(q):
                continue
            roots.append(q)
            if len(roots) == n_roots:
                return eigenset_from_roots(d, roots, source="solver")
        if top >= q_max:
            raise SearchExhaustedError(n_roots, len(roots), q_max)
        top = min(2 * top, q_max)


def eigenset_from_roots(d, roots, source="solver", residual_pct=None):
    """Wrap a root list into an :class:`EigenSet`, computing the diagnostics.

    If *residual_pct* is given (e.g. the values printed alongside tabulated
    roots) it is used instead of recomputing the metric.  Where the metric
    is undefined (a root within ``1e-9`` of a tangent pole) it is NaN.
    """
    flags = []
    if residual_pct is None:
        residual_pct = []
        for q in roots:
            try:
                value, flag = table_residual(q, d)
            except UndefinedMetricError:
                value, flag = math.nan, False
            residual_pct.append(value)
            flags.append(flag)
    else:
        flags = [False] * len(roots)
    f_res = [float(characteristic(q, d)) for q in roots]
    return EigenSet(
        params=d,
        roots=tuple(roots),
        residual_pct=tuple(float(r) for r in residual_pct),
        pole_free_residual=tuple(f_res),
        residual_flags=tuple(flags),
        source=source,
    )


def _read_rows(fh):
    rows = [line for line in fh if line.strip() and not line.lstrip().startswith("#")]
    reader = csv.DictReader(rows)
    if tuple(reader.fieldnames or ()) [: len(CSV_HEADER)] != CSV_HEADER:
        raise ValueError(f"expected CSV header {','.join(CSV_HEADER)}")
    roots, residuals = [], []
    for row in reader:
        roots.append(float(row["q_n"]))
        residuals.append(float(row["residual_pct"]))
    return roots, residuals


def read_eigenset_csv(path_or_file, d, source=None):
    """Load roots from a CSV with header ``n,q_n,residual_pct,F_residual``.

    The residual column is taken as stored; ``F_residual`` is recomputed
    for the given parameters.
    """
    if hasattr(path_or_file, "read"):
        roots, residuals = _read_rows(path_or_file)
        source = source or "file"
    else:
        with open(path_or_file, newline="") as fh:
            roots, residuals = _read_rows(fh)
        source = source or str(path_or_file)
    return eigenset_from_roots(d, roots, source=source, residual_pct=residuals)


def load_table1_fixture(d):
    """The 25 tabulated roots for gamma = -0.03421, eps = 2.64489e-3.

    The printed roots are rounded to four decimals, so their equation
    residuals reach about 1 %.  Use these to reproduce the printed series
    values; use :func:`find_roots` for accurate numerics.
    """
    with resources.files("filmseries.data").joinpath("table1_roots.csv").open(
        "r", newline=""
    ) as fh:
        return read_eigenset_csv(fh, d, source="fixture")


def write_eigenset_csv(eigenset, fh=None):
    """Serialise *eigenset* as CSV (17 significant digits).  Returns the text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i, (q, res, fres) in enumerate(
        zip(eigenset.roots, eigenset.residual_pct, eigenset.pole_free_residual), start=1
    ):
        writer.writerow([i, f"{q:.17g}", f"{res:.17g}", f"{fres:.17g}"])
    if any(eigenset.residual_flags):
        buf.write("# residual_pct is reported as 0 where tan(q_n) = 0 (limit convention)\n")
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text
