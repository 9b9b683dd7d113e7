"""Eigenvalues and series identities of a coupled heat/mass diffusion model.

The coupled film-penetration problem for exothermic gas absorption has
eigenfunction-series solutions over the positive roots ``q_n`` of
``tan q = (gamma/sqrt(eps)) tan(q sqrt(eps))``.  Equating their Laplace
transforms with the closed-form transforms yields summation formulae,
which this package evaluates, cross-checks and tabulates.
"""

from .eigen import EigenSet, characteristic, find_roots, load_table1_fixture, residual_percent
from .exceptions import (
    ConfigError,
    DegeneracyError,
    DegenerateGError,
    DomainError,
    FilmSeriesError,
    InsufficientRootsError,
    SearchExhaustedError,
    UndefinedMetricError,
)
from .params import DerivedParams, ModelParams, derive, reference_params
from .profiles import (
    ProfilePoint,
    ProfileRequest,
    concentration,
    coupling_residuals,
    temperature,
    termwise_transform_check,
    transform_concentration,
    transform_temperature,
)
from .series import (
    FormulaOperands,
    SeriesEval,
    bernoulli_numbers,
    bernoulli_series,
    formula1_lhs,
    formula1_rhs,
    formula2_lhs,
    formula2_rhs,
    formula3_lhs,
    formula3_rhs,
    g_of_q,
    ozisik_lhs,
    ozisik_rhs,
    pi_coth_pi,
    stable_coth,
    stable_tanh,
)
from .tables import ComparisonRow, VerificationReport, table1, table2, table3, truncation_experiment

__version__ = "0.1.0"
