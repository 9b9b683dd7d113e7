"""Concentration and temperature profiles of the coupled diffusion problem.

Time domain (truncated eigenfunction series)::

    a(x, t)     = w2 (1-x)/(1-gamma)
                  + 2 w2 sum cos(q sqrt(eps)) sin[q (1-x)] exp(-q^2 t) / [q G(q)]
    theta(x, t) = w2 beta_s (1-x)/(1-gamma)
                  + (2 w2 beta_s / sqrt(eps)) sum cos q sin[q sqrt(eps) (1-x)] exp(-q^2 t) / [q G(q)]

Laplace domain (closed form)::

    a_bar(x, p)     = w2 sinh[(1-x) sqrt p] / sinh(sqrt p)
                      / (p [1 - (gamma/sqrt(eps)) coth(sqrt p) tanh(sqrt(eps p))])
    theta_bar(x, p) = w2 beta_s sinh[(1-x) sqrt(eps p)] / sinh(sqrt(eps p))
                      / (p sqrt(eps) [coth(sqrt(eps p)) tanh(sqrt p) - gamma/sqrt(eps)])

The boundary conditions are ``a = theta = 0`` at ``x = 1``,
``a = w1 theta + w2`` and ``d theta/dx = beta_s da/dx`` at ``x = 0``.
"""

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegeneracyError, DomainError, InsufficientRootsError
from .params import derive
from .series import G_FLOOR, _check_g, g_of_q, sinh_ratio, stable_coth, stable_tanh

__all__ = [
    "ProfileRequest",
    "ProfilePoint",
    "concentration",
    "temperature",
    "concentration_gradient",
    "temperature_gradient",
    "transform_concentration",
    "transform_temperature",
    "coupling_residuals",
    "termwise_transform_check",
    "write_profile_csv",
]


@dataclass(frozen=True)
class ProfileRequest:
    params: object
    x: float
    tau: float
    n_terms: int
    eigenset: object

    def __post_init__(self):
        if not 0.0 <= self.x <= 1.0:
            raise DomainError(f"x must lie in [0, 1], got {self.x!r}")
        if not self.tau >= 0.0:
            raise DomainError(f"tau must be >= 0, got {self.tau!r}")
        if self.n_terms < 1:
            raise DomainError("n_terms must be >= 1")
        if self.n_terms > len(self.eigenset):
            raise InsufficientRootsError(
                f"{self.n_terms} terms requested but only {len(self.eigenset)} roots available"
            )


@dataclass(frozen=True)
class ProfilePoint:
    """One sample of a profile.

    ``truncation_warning`` is set at ``tau = 0``, where the zero initial
    condition is only reached in the limit of infinitely many terms.
    """

    x: float
    tau: float
    value: float
    kind: str
    truncation_warning: bool = False


def _setup(params, eigenset, n_terms):
    d = derive(params)
    if eigenset.params != d:
        raise DomainError("eigenset was computed for different parameters")
    q = eigenset.head(n_terms)
    g = g_of_q(q, d)
    _check_g(g, G_FLOOR)
    return d, q, g


def _series_value(const, scale, terms):
    return const + scale * math.fsum(terms.tolist())


def concentration(req):
    """Dissolved-gas concentration a(x, tau) from the truncated series."""
    p = req.params
    d, q, g = _setup(p, req.eigenset, req.n_terms)
    terms = np.cos(q * d.sqrt_eps) * np.sin(q * (1.0 - req.x)) * np.exp(-q * q * req.tau) / (q * g)
    value = _series_value(p.w2 * (1.0 - req.x) / (1.0 - d.gamma), 2.0 * p.w2, terms)
    return ProfilePoint(req.x, req.tau, value, "concentration", req.tau == 0.0)


def temperature(req):
    """Liquid temperature theta(x, tau) from the truncated series."""
    p = req.params
    d, q, g = _setup(p, req.eigenset, req.n_terms)
    terms = (
        np.cos(q) * np.sin(q * d.sqrt_eps * (1.0 - req.x)) * np.exp(-q * q * req.tau) / (q * g)
    )
    value = _series_value(
        p.w2 * p.beta_s * (1.0 - req.x) / (1.0 - d.gamma),
        2.0 * p.w2 * p.beta_s / d.sqrt_eps,
        terms,
    )
    return ProfilePoint(req.x, req.tau, value, "temperature", req.tau == 0.0)


def concentration_gradient(req):
    """da/dx from term-by-term differentiation of the series."""
    p = req.params
    d, q, g = _setup(p, req.eigenset, req.n_terms)
    terms = np.cos(q * d.sqrt_eps) * np.cos(q * (1.0 - req.x)) * np.exp(-q * q * req.tau) / g
    return _series_value(-p.w2 / (1.0 - d.gamma), -2.0 * p.w2, terms)


def temperature_gradient(req):
    """d theta/dx from term-by-term differentiation of the series."""
    p = req.params
    d, q, g = _setup(p, req.eigenset, req.n_terms)
    terms = np.cos(q) * np.cos(q * d.sqrt_eps * (1.0 - req.x)) * np.exp(-q * q * req.tau) / g
    return _series_value(
        -p.w2 * p.beta_s / (1.0 - d.gamma), -2.0 * p.w2 * p.beta_s, terms
    )


def _check_xp(x, p):
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    if not (p > 0.0 and math.isfinite(p)):
        raise DomainError(f"p must be positive and finite, got {p!r}")


def transform_concentration(x, p, params):
    """Laplace transform of a(x, tau) in closed form."""
    _check_xp(x, p)
    d = derive(params)
    sp = math.sqrt(p)
    denom = 1.0 - d.ratio * stable_coth(sp) * stable_tanh(math.sqrt(d.epsilon * p))
    if abs(denom) < 1e-300:
        raise DegeneracyError(f"transform denominator vanishes at p = {p!r}")
    return params.w2 * sinh_ratio(sp, 1.0 - x) / (p * denom)


def transform_temperature(x, p, params):
    """Laplace transform of theta(x, tau) in closed form."""
    _check_xp(x, p)
    d = derive(params)
    se = math.sqrt(d.epsilon * p)
    denom = stable_coth(se) * stable_tanh(math.sqrt(p)) - d.ratio
    if abs(denom) < 1e-300:
        raise DegeneracyError(f"transform denominator vanishes at p = {p!r}")
    return params.w2 * params.beta_s * sinh_ratio(se, 1.0 - x) / (p * d.sqrt_eps * denom)


def coupling_residuals(tau, params, eigenset, n_terms):
    """Residuals of the two coupled conditions at the surface ``x = 0``.

    Returns ``(a - w1 theta - w2, d theta/dx - beta_s da/dx)``, each
    evaluated from the truncated series.  With exact roots both vanish for
    every truncation: the first term by term through the eigenvalue
    equation, the second identically.
    """
    if not tau > 0.0:
        raise DomainError(f"tau must be > 0, got {tau!r}")
    req = ProfileRequest(params, 0.0, tau, n_terms, eigenset)
    a0 = concentration(req).value
    t0 = temperature(req).value
    bc5 = a0 - params.w1 * t0 - params.w2
    bc6 = temperature_gradient(req) - params.beta_s * concentration_gradient(req)
    return bc5, bc6


def termwise_transform_check(x, p, params, eigenset, n_terms):
    """Compare the term-by-term Laplace transform of the concentration series
    with the closed-form transform.  Returns ``(series_side, closed_side)``.

    ``series_side = w2 (1-x)/[(1-gamma) p]
                    + 2 w2 sum cos(q sqrt(eps)) sin[q (1-x)] / [q G(q) (p + q^2)]``
    """
    _check_xp(x, p)
    d, q, g = _setup(params, eigenset, n_terms)
    terms = np.cos(q * d.sqrt_eps) * np.sin(q * (1.0 - x)) / (q * g * (p + q * q))
    series_side = _series_value(params.w2 * (1.0 - x) / ((1.0 - d.gamma) * p), 2.0 * params.w2, terms)
    return series_side, transform_concentration(x, p, params)


def write_profile_csv(points, fh=None):
    """CSV with header ``kind,x,tau,value`` (17 significant digits)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "x", "tau", "value"])
    for pt in points:
        writer.writerow([pt.kind, f"{pt.x:.17g}", f"{pt.tau:.17g}", f"{pt.value:.17g}"])
    text = buf.getvalue()
    if fh is not None:
        fh.write(text)
    return text
