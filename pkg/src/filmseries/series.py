"""Series and closed forms of the three summation identities.

Formula 1 (surface temperature)::

    sqrt(eps)/(1-gamma) + 2 sum cos q sin(q sqrt(eps)) / [q (1 + q^2/p) G(q)]
        = 1 / [coth(sqrt(eps p)) tanh(sqrt p) - gamma/sqrt(eps)]

Formula 2 (surface concentration gradient)::

    1/(1-gamma) + 2 sum cos(q sqrt(eps)) cos q / [(1 + q^2/p) G(q)]
        = sqrt(p) coth(sqrt p) / [1 - (gamma/sqrt(eps)) coth(sqrt p) tanh(sqrt(eps p))]

Formula 3 (the gamma = 0 case, where q_n = n pi)::

    1 + 2 sum 1 / (1 + n^2 pi^2 / p) = sqrt(p) coth(sqrt p)

The sums run over the roots q_n of the eigenvalue equation and
G(q) = (1-gamma) cos(q sqrt(eps)) cos q - (sqrt(eps) - gamma/sqrt(eps)) sin(q sqrt(eps)) sin q.

Sums are accumulated in order of increasing n with :func:`math.fsum`
(exactly rounded) unless ``compensated=False`` is requested.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .exceptions import (
    DegeneracyError,
    DegenerateGError,
    DomainError,
    InsufficientRootsError,
)

__all__ = [
    "COTH_SATURATION",
    "COTH_SERIES_BELOW",
    "G_FLOOR",
    "SeriesEval",
    "FormulaOperands",
    "stable_coth",
    "stable_tanh",
    "sinh_ratio",
    "g_of_q",
    "formula1_terms",
    "formula1_lhs",
    "formula1_rhs",
    "formula2_terms",
    "formula2_lhs",
    "formula2_rhs",
    "formula3_terms",
    "formula3_tail",
    "formula3_lhs",
    "formula3_rhs",
    "pi_coth_pi",
    "bernoulli_numbers",
    "bernoulli_coefficients",
    "bernoulli_series",
    "ozisik_lhs",
    "ozisik_rhs",
]

#: coth(x) is returned as exactly 1.0 above this (coth(20) - 1 = 8.5e-18).
COTH_SATURATION = 20.0
#: below this coth(x) = 1/x + x/3 (next term x^3/45 is negligible)
COTH_SERIES_BELOW = 1e-8
#: smallest |G(q_n)| a series term may be divided by
G_FLOOR = 1e-12
#: largest count accepted by :func:`bernoulli_numbers`
BERNOULLI_CAP = 60
PI2 = math.pi * math.pi


@dataclass(frozen=True)
class SeriesEval:
    """A truncated series value.

    ``last_term`` is the magnitude of the final included term.
    ``tail_estimate`` is the analytic remainder added (or estimated) when
    one is available, else None.  ``diverging`` is set by
    :func:`bernoulli_series` outside its radius of convergence.
    """

    value: float
    terms_used: int
    last_term: float
    tail_estimate: Optional[float] = None
    compensated: bool = True
    diverging: bool = False

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class FormulaOperands:
    """Laplace parameter *p*, derived constants and the roots to sum over."""

    p: float
    d: object
    eigenset: object

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > 0.0):
            raise DomainError(f"p must be positive and finite, got {self.p!r}")
        if self.eigenset.params != self.d:
            raise DomainError("eigenset was computed for different parameters")


def stable_coth(x):
    """Hyperbolic cotangent for ``x > 0`` that never overflows."""
    if not x > 0.0:
        raise DomainError(f"coth requires x > 0, got {x!r}")
    if x > COTH_SATURATION:
        return 1.0
    if x < COTH_SERIES_BELOW:
        return 1.0 / x + x / 3.0
    return 1.0 / math.tanh(x)


def stable_tanh(x):
    """Hyperbolic tangent; :func:`math.tanh` already saturates cleanly."""
    return math.tanh(x)


def sinh_ratio(s, frac):
    """``sinh(frac*s) / sinh(s)`` for ``s > 0`` and ``0 <= frac <= 1``.

    Evaluated as ``exp(-(1-frac) s) * expm1(-2 frac s) / expm1(-2 s)``,
    which neither overflows nor cancels.
    """
    if frac == 0.0:
        return 0.0
    return math.exp(-(1.0 - frac) * s) * (math.expm1(-2.0 * frac * s) / math.expm1(-2.0 * s))


def g_of_q(q, d):
    """G(q) with gamma in place of w1*beta_s.  Accepts arrays."""
    qs = q * d.sqrt_eps
    return (1.0 - d.gamma) * np.cos(qs) * np.cos(q) - (
        d.sqrt_eps - d.ratio
    ) * np.sin(qs) * np.sin(q)


def _check_g(g, floor):
    bad = np.flatnonzero(np.abs(g) < floor)
    if bad.size:
        i = int(bad[0])
        raise DegenerateGError(i + 1, float(g[i]), floor)


def _roots(op, n_terms):
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    if n_terms > len(op.eigenset):
        raise InsufficientRootsError(
            f"{n_terms} terms requested but only {len(op.eigenset)} roots available"
        )
    return op.eigenset.head(n_terms)


def _prefactor(d):
    if abs(1.0 - d.gamma) < 1e-12:
        raise DegeneracyError("1 - gamma vanishes")
    return 1.0 / (1.0 - d.gamma)


def _summed(const, terms, compensated, tail=None):
    if compensated:
        parts = [const, *terms.tolist()]
        if tail is not None:
            parts.append(tail)
        value = math.fsum(parts)
    else:
        value = const
        for t in terms.tolist():
            value += t
        if tail is not None:
            value += tail
    return SeriesEval(
        value=value,
        terms_used=len(terms),
        last_term=abs(float(terms[-1])) if len(terms) else 0.0,
        tail_estimate=tail,
        compensated=compensated,
    )


def formula1_terms(p, d, q, g_floor=G_FLOOR):
    """Series terms ``2 cos q sin(q sqrt(eps)) / [q (1 + q^2/p) G(q)]``."""
    q = np.asarray(q, dtype=float)
    g = g_of_q(q, d)
    _check_g(g, g_floor)
    return 2.0 * np.cos(q) * np.sin(q * d.sqrt_eps) / (q * (1.0 + q * q / p) * g)


def formula1_lhs(op, n_terms=25, compensated=True, g_floor=G_FLOOR):
    """Truncated series side of formula 1 over the first *n_terms* roots."""
    q = _roots(op, n_terms)
    terms = formula1_terms(op.p, op.d, q, g_floor)
    return _summed(op.d.sqrt_eps * _prefactor(op.d), terms, compensated)


def formula1_rhs(p, d):
    """Closed form ``1 / [coth(sqrt(eps p)) tanh(sqrt p) - gamma/sqrt(eps)]``."""
    if not p > 0.0:
        raise DomainError(f"p must be > 0, got {p!r}")
    denom = stable_coth(math.sqrt(d.epsilon * p)) * stable_tanh(math.sqrt(p)) - d.ratio
    if abs(denom) < 1e-300:
        raise DegeneracyError(f"formula 1 denominator vanishes at p = {p!r}")
    return 1.0 / denom


def formula2_terms(p, d, q, g_floor=G_FLOOR):
    """Series terms ``2 cos(q sqrt(eps)) cos q / [(1 + q^2/p) G(q)]``."""
    q = np.asarray(q, dtype=float)
    g = g_of_q(q, d)
    _check_g(g, g_floor)
    return 2.0 * np.cos(q * d.sqrt_eps) * np.cos(q) / ((1.0 + q * q / p) * g)


def formula2_lhs(op, n_terms=25, compensated=True, g_floor=G_FLOOR):
    """Truncated series side of formula 2 over the first *n_terms* roots."""
    q = _roots(op, n_terms)
    terms = formula2_terms(op.p, op.d, q, g_floor)
    return _summed(_prefactor(op.d), terms, compensated)


def formula2_rhs(p, d):
    """Closed form ``sqrt(p) coth(sqrt p) / [1 - (gamma/sqrt(eps)) coth(sqrt p) tanh(sqrt(eps p))]``."""
    if not p > 0.0:
        raise DomainError(f"p must be > 0, got {p!r}")
    sp = math.sqrt(p)
    denom = 1.0 - d.ratio * stable_coth(sp) * stable_tanh(math.sqrt(d.epsilon * p))
    if abs(denom) < 1e-300:
        raise DegeneracyError(f"formula 2 denominator vanishes at p = {p!r}")
    return formula3_rhs(p) / denom


def formula3_terms(p, n_terms):
    """Series terms ``2 / (1 + n^2 pi^2 / p)`` for n = 1..n_terms."""
    n = np.arange(1, n_terms + 1, dtype=float)
    q = n * math.pi
    return 2.0 / (1.0 + q * q / p)


def formula3_tail(p, n_terms):
    """Integral estimate of the omitted tail, ``int_N^inf 2p/(p + x^2 pi^2) dx``.

    Equal to ``(2 sqrt(p)/pi) * (pi/2 - arctan(N pi / sqrt p))``; the
    complementary arctangent is evaluated directly to avoid cancellation.
    """
    sp = math.sqrt(p)
    return 2.0 * sp / math.pi * math.atan2(sp, n_terms * math.pi)


def formula3_lhs(p, n_terms=10_000, tail_correction=True, compensated=True):
    """Partial sum of formula 3, optionally with :func:`formula3_tail` added."""
    if not p > 0.0:
        raise DomainError(f"p must be > 0, got {p!r}")
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    terms = formula3_terms(p, n_terms)
    tail = formula3_tail(p, n_terms) if tail_correction else None
    return _summed(1.0, terms, compensated, tail)


def formula3_rhs(p):
    """``sqrt(p) coth(sqrt p)``, tending to 1 as p -> 0."""
    if not p > 0.0:
        raise DomainError(f"p must be > 0, got {p!r}")
    sp = math.sqrt(p)
    return sp * stable_coth(sp)


def pi_coth_pi():
    """``pi coth pi``: formula 3 at ``p = pi^2``, i.e. ``1 + 2 sum 1/(1+n^2)``."""
    return formula3_rhs(PI2)


@lru_cache(maxsize=None)
def _bernoulli_exact(m):
    # B_0..B_m from sum_{k=0}^{j} C(j+1, k) B_k = 0
    b = [Fraction(1)]
    for j in range(1, m + 1):
        acc = Fraction(0)
        c = 1  # C(j+1, 0)
        for k in range(j):
            acc += c * b[k]
            c = c * (j + 1 - k) // (k + 1)
        b.append(-acc / (j + 1))
    return tuple(b)


def bernoulli_numbers(count, exact=False):
    """The first *count* even-index Bernoulli numbers ``B_0, B_2, ..., B_{2(count-1)}``.

    Computed exactly with :class:`fractions.Fraction`; returned as floats
    unless ``exact=True``.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    if count > BERNOULLI_CAP:
        raise DomainError(f"count must be <= {BERNOULLI_CAP}, got {count}")
    b = _bernoulli_exact(2 * (count - 1))[::2]
    return list(b) if exact else [float(x) for x in b]


def bernoulli_coefficients(count, exact=False):
    """``2^(2n) B_(2n) / (2n)!`` for n = 0..count-1, the power-series
    coefficients of ``sqrt(p) coth(sqrt p)`` in p."""
    b = bernoulli_numbers(count, exact=True)
    coeffs = [Fraction(4**n) * bn / math.factorial(2 * n) for n, bn in enumerate(b)]
    return coeffs if exact else [float(c) for c in coeffs]


def _zeta_even(n):
    # zeta(2n); only called with n >= 30, where 4^(-2n) < 1e-36
    return 1.0 + 2.0 ** (-2 * n) + 3.0 ** (-2 * n)


def bernoulli_series(p, n_terms=30):
    """Power series of ``sqrt(p) coth(sqrt p)`` through ``p^n_terms``.

    Coefficients ``2^(2n) B_(2n) / (2n)!`` come from the exact Bernoulli
    numbers while they are available (n < 60).  Past that, each term is
    formed as ``(-1)^(n+1) 2 zeta(2n) (p/pi^2)^n``, the same coefficient
    scaled so that neither factor overflows; near ``p = pi^2`` thousands of
    terms are needed.

    The series converges only for ``|p| < pi^2``: term magnitudes behave
    like ``2 (|p|/pi^2)^n`` and stop decreasing towards zero once
    ``|p| >= pi^2``, where the ``diverging`` flag is set.
    """
    if n_terms < 0:
        raise DomainError("n_terms must be >= 0")
    p = float(p)
    n_exact = min(n_terms + 1, BERNOULLI_CAP)
    coeffs = np.array(bernoulli_coefficients(n_exact))
    terms = (coeffs * p ** np.arange(n_exact)).tolist()
    x = p / PI2
    for n in range(n_exact, n_terms + 1):
        sign = 1.0 if n % 2 else -1.0
        terms.append(sign * 2.0 * _zeta_even(n) * x**n)
    return SeriesEval(
        value=math.fsum(terms),
        terms_used=n_terms,
        last_term=abs(terms[-1]),
        diverging=abs(p) >= PI2,
    )


def _check_rect(m, a_len, b_len, y):
    if m < 1:
        raise DomainError("m must be >= 1")
    if not (a_len > 0 and b_len > 0):
        raise DomainError("side lengths must be positive")
    if not 0.0 < y < b_len:
        raise DomainError(f"y must lie strictly inside (0, {b_len!r}), got {y!r}")


def ozisik_lhs(m, a_len, b_len, y, n_terms=100_000, compensated=True):
    """Sine series ``(2/b) sum theta_n/(sigma_m^2 + theta_n^2) sin(theta_n y)``
    with ``sigma_m = m pi/a`` and ``theta_n = n pi/b``."""
    _check_rect(m, a_len, b_len, y)
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    sigma = m * math.pi / a_len
    theta = np.arange(1, n_terms + 1, dtype=float) * (math.pi / b_len)
    terms = (2.0 / b_len) * theta / (sigma * sigma + theta * theta) * np.sin(theta * y)
    return _summed(0.0, terms, compensated)


def ozisik_rhs(m, a_len, b_len, y):
    """``sinh[sigma_m (b - y)] / sinh(sigma_m b)``, overflow-free."""
    _check_rect(m, a_len, b_len, y)
    sigma = m * math.pi / a_len
    return sinh_ratio(sigma * b_len, (b_len - y) / b_len)
