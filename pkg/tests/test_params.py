import math

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from filmseries import DegeneracyError, DomainError, ModelParams, derive
from filmseries.exceptions import ConfigError
from filmseries.params import load_config, params_from_mapping, parse_config

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


def test_reference_constants(d):
    assert d.gamma == -0.03421
    assert d.sqrt_eps == pytest.approx(0.0514285, abs=5e-8)
    assert round(d.ratio, 6) == -0.665195


def test_ratio_against_extended_precision(d):
    mp.mp.dps = 30
    exact = mp.mpf("-0.03421") / mp.sqrt(mp.mpf("2.64489e-3"))
    assert d.ratio == pytest.approx(float(exact), rel=4e-16)


def test_beta_s_zero_gives_gamma_zero():
    d = derive(ModelParams(w1=3.7, w2=1.0, beta_s=0.0, epsilon=1.0))
    assert d.gamma == 0.0
    assert d.sqrt_eps == 1.0


@pytest.mark.parametrize("eps", [0.0, -1e-3])
def test_nonpositive_epsilon_rejected(eps):
    with pytest.raises(DomainError):
        ModelParams(1.0, 1.0, 1.0, eps)


def test_nonfinite_rejected():
    with pytest.raises(DomainError):
        ModelParams(math.nan, 1.0, 1.0, 1.0)


def test_gamma_one_is_degenerate():
    with pytest.raises(DegeneracyError):
        derive(ModelParams(2.0, 1.0, 0.5, 1.0))
    with pytest.raises(DegeneracyError):
        derive(ModelParams.from_gamma(1.0 - 1e-3, 1.0), floor=1e-2)


@given(finite, finite, st.floats(min_value=1e-12, max_value=1e6))
def test_gamma_is_single_product(w1, beta_s, eps):
    p = ModelParams(w1, 1.0, beta_s, eps)
    if abs(1.0 - w1 * beta_s) < 1e-12:
        return
    d = derive(p)
    assert d.gamma == w1 * beta_s
    assert d == derive(p)
    assert d.sqrt_eps**2 == pytest.approx(eps, rel=2 * 2.2e-16)


def test_parse_config_comments_and_keys():
    values = parse_config("# header\nw1 = -0.03421  # inline\nbeta-s = 1\nepsilon=2.64489e-3\nn_roots = 40\n")
    assert values == {"w1": -0.03421, "beta_s": 1.0, "epsilon": 2.64489e-3, "n_roots": "40"}


def test_config_gamma_form(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text("gamma = -0.03421\nepsilon = 2.64489e-3\n")
    params, extras = load_config(path)
    assert params == ModelParams.from_gamma(-0.03421, 2.64489e-3)
    assert extras == {}


@pytest.mark.parametrize(
    "values",
    [
        {"gamma": 0.1},
        {"epsilon": 1.0},
        {"w1": 1.0, "epsilon": 1.0},
        {"w1": 0.5, "beta_s": 0.5, "gamma": 0.3, "epsilon": 1.0},
    ],
)
def test_config_inconsistent(values):
    with pytest.raises(ConfigError):
        params_from_mapping(values)


def test_config_bad_literal():
    with pytest.raises(ConfigError):
        parse_config("epsilon = two\n")
