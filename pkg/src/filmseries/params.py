"""Model constants of the coupled heat/mass film-penetration problem.

Only two combinations matter for the series identities: ``gamma = w1 * beta_s``
and ``epsilon``.  The individual constants ``w1``, ``w2`` and ``beta_s`` are
needed only when evaluating the concentration and temperature profiles.
"""

import configparser
import math
from dataclasses import dataclass
from pathlib import Path

from .exceptions import ConfigError, DegeneracyError, DomainError

__all__ = [
    "GAMMA_FLOOR",
    "REFERENCE_GAMMA",
    "REFERENCE_EPSILON",
    "ModelParams",
    "DerivedParams",
    "derive",
    "reference_params",
    "parse_config",
    "params_from_mapping",
    "load_config",
]

#: Smallest admissible |1 - gamma|; the prefactor 1/(1 - gamma) appears everywhere.
GAMMA_FLOOR = 1e-12

#: Water vapour / lithium bromide system.
REFERENCE_GAMMA = -0.03421
REFERENCE_EPSILON = 2.64489e-3


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless constants ``w1, w2, beta_s, epsilon``."""

    w1: float
    w2: float
    beta_s: float
    epsilon: float

    def __post_init__(self):
        for name in ("w1", "w2", "beta_s", "epsilon"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.epsilon <= 0.0:
            raise DomainError(f"epsilon must be > 0, got {self.epsilon!r}")

    @classmethod
    def from_gamma(cls, gamma, epsilon, w2=1.0):
        """Synthesize ``w1 = gamma, beta_s = 1`` for a (gamma, epsilon) pair."""
        return cls(w1=float(gamma), w2=float(w2), beta_s=1.0, epsilon=float(epsilon))

    @property
    def gamma(self):
        return self.w1 * self.beta_s


@dataclass(frozen=True)
class DerivedParams:
    """The fundamental pair ``(gamma, epsilon)`` plus ``sqrt(epsilon)`` and ``gamma/sqrt(epsilon)``."""

    gamma: float
    epsilon: float
    sqrt_eps: float
    ratio: float


def derive(params, floor=GAMMA_FLOOR):
    """Return the :class:`DerivedParams` of *params*.

    Raises
    ------
    DomainError
        If ``epsilon <= 0``.
    DegeneracyError
        If ``|1 - gamma| < floor``.
    """
    if not params.epsilon > 0.0:
        raise DomainError(f"epsilon must be > 0, got {params.epsilon!r}")
    gamma = params.w1 * params.beta_s
    if abs(1.0 - gamma) < floor:
        raise DegeneracyError(f"|1 - gamma| = {abs(1.0 - gamma):.3e} is below {floor:.1e}")
    sqrt_eps = math.sqrt(params.epsilon)
    return DerivedParams(
        gamma=gamma, epsilon=params.epsilon, sqrt_eps=sqrt_eps, ratio=gamma / sqrt_eps
    )


def reference_params():
    """ModelParams for the tabulated water-vapour/LiBr case (w2 = 1, beta_s = 1)."""
    return ModelParams.from_gamma(REFERENCE_GAMMA, REFERENCE_EPSILON)


_PARAM_KEYS = {"w1", "w2", "beta_s", "epsilon", "gamma"}


def parse_config(text):
    """Parse flat ``key = value`` text into a dict of floats and strings.

    Lines starting with ``#`` are comments.  Keys are case-insensitive; a
    dash in a key is read as an underscore (``beta-s`` == ``beta_s``).
    Model-constant keys must be decimal literals.  Unrecognised keys are
    kept as strings so the CLI can pick up its own options.
    """
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",),
        interpolation=None,
    )
    try:
        parser.read_string("[top]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    out = {}
    for key, raw in parser.items("top"):
        key = key.strip().lower().replace("-", "_")
        raw = raw.strip()
        if key in _PARAM_KEYS:
            try:
                out[key] = float(raw)
            except ValueError:
                raise ConfigError(f"{key}: not a decimal literal: {raw!r}") from None
        else:
            out[key] = raw
    return out


def params_from_mapping(values):
    """Build :class:`ModelParams` from a mapping with either
    ``(w1, beta_s, epsilon[, w2])`` or ``(gamma, epsilon[, w2])``."""
    if "epsilon" not in values:
        raise ConfigError("epsilon is required")
    eps = values["epsilon"]
    w2 = values.get("w2", 1.0)
    have_pair = "w1" in values or "beta_s" in values
    if have_pair:
        if "w1" not in values or "beta_s" not in values:
            raise ConfigError("w1 and beta_s must be given together")
        params = ModelParams(values["w1"], w2, values["beta_s"], eps)
        gamma = values.get("gamma")
        if gamma is not None and not math.isclose(params.gamma, gamma, rel_tol=1e-12, abs_tol=1e-15):
            raise ConfigError(
                f"gamma = {gamma!r} contradicts w1 * beta_s = {params.gamma!r}"
            )
        return params
    if "gamma" not in values:
        raise ConfigError("either gamma or both w1 and beta_s are required")
    return ModelParams.from_gamma(values["gamma"], eps, w2=w2)


def load_config(path):
    """Read a key-value config file and return ``(ModelParams, extras)``."""
    values = parse_config(Path(path).read_text())
    extras = {k: v for k, v in values.items() if k not in _PARAM_KEYS}
    return params_from_mapping(values), extras
