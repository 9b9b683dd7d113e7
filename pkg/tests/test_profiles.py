import io
import math

import numpy as np
import pytest

from filmseries import (
    DomainError,
    FormulaOperands,
    InsufficientRootsError,
    ModelParams,
    ProfileRequest,
    concentration,
    coupling_residuals,
    derive,
    find_roots,
    formula1_lhs,
    temperature,
    termwise_transform_check,
    transform_concentration,
    transform_temperature,
)
from filmseries.eigen import eigenset_from_roots
from filmseries.profiles import (
    concentration_gradient,
    temperature_gradient,
    write_profile_csv,
)

# mpmath, 40 digits, over roots polished to 40 digits (tests/make_oracles.py)
A_0_001_N25 = 0.81109691258999331189
THETA_025_005_N25 = 1.8900588830767222274
A_BAR_05_2 = 0.18809421863061883727
THETA_BAR_0_1 = 1.2555314291401764077
FIXTURE_BC5_01 = -3.192831057e-5


def req(params, es, x, tau, n=25):
    return ProfileRequest(params, x, tau, n, es)


@pytest.mark.parametrize("n", [1, 5, 25])
@pytest.mark.parametrize("tau", [0.0, 1e-3, 0.1, 5.0])
def test_profiles_vanish_at_far_boundary(params, roots25, n, tau):
    r = req(params, roots25, 1.0, tau, n)
    assert concentration(r).value == 0.0
    assert temperature(r).value == 0.0


def test_steady_state(params, roots25, d):
    a = concentration(req(params, roots25, 0.5, 50.0)).value
    t = temperature(req(params, roots25, 0.0, 50.0)).value
    assert a == pytest.approx(params.w2 * 0.5 / (1 - d.gamma), abs=1e-15)
    assert t == pytest.approx(params.w2 * params.beta_s / (1 - d.gamma), abs=1e-15)


def test_steady_state_remainder_is_negligible(roots25):
    # the first exponential dominates the remainder: exp(-q1^2 * 50) ~ 1e-200
    assert math.exp(-roots25.roots[0] ** 2 * 50.0) < 1e-199


def test_concentration_oracle(params, roots25):
    pt = concentration(req(params, roots25, 0.0, 0.01))
    assert pt.value == pytest.approx(A_0_001_N25, rel=1e-13)
    assert pt.kind == "concentration"
    assert not pt.truncation_warning


def test_temperature_oracle(params, roots25):
    pt = temperature(req(params, roots25, 0.25, 0.05))
    assert pt.value == pytest.approx(THETA_025_005_N25, rel=1e-13)
    assert pt.kind == "temperature"


def test_transform_oracles(params):
    assert transform_concentration(0.5, 2.0, params) == pytest.approx(A_BAR_05_2, rel=1e-14)
    assert transform_temperature(0.0, 1.0, params) == pytest.approx(THETA_BAR_0_1, rel=1e-14)


@pytest.mark.parametrize("p", [1e-3, 1.0, 1e3, 1e8])
def test_transforms_vanish_at_far_boundary(params, p):
    assert transform_concentration(1.0, p, params) == 0.0
    assert transform_temperature(1.0, p, params) == 0.0


def test_transform_gamma_zero_surface():
    params = ModelParams.from_gamma(0.0, 2.64489e-3, w2=1.0)
    assert transform_concentration(0.0, 1.0, params) == pytest.approx(1.0, rel=1e-15)


def test_transform_temperature_small_p(params, d):
    p = 1e-8
    expected = params.w2 * params.beta_s / (1 - d.gamma) / p
    assert transform_temperature(0.0, p, params) == pytest.approx(expected, rel=1e-6)


def test_transform_large_p_no_overflow(params):
    value = transform_concentration(0.5, 1e6, params)
    assert 0.0 <= value < 1e-200


def test_domain_checks(params, roots25):
    with pytest.raises(DomainError):
        req(params, roots25, -0.1, 0.1)
    with pytest.raises(DomainError):
        req(params, roots25, 0.5, -1.0)
    with pytest.raises(InsufficientRootsError):
        req(params, roots25, 0.5, 0.1, 26)
    with pytest.raises(DomainError):
        transform_concentration(0.5, 0.0, params)
    with pytest.raises(DomainError):
        coupling_residuals(0.0, params, roots25, 25)


def test_zero_time_is_flagged(params, roots25):
    assert concentration(req(params, roots25, 0.5, 0.0)).truncation_warning


def test_initial_condition_approached_as_terms_grow(params, solver_roots):
    values = [abs(concentration(req(params, solver_roots, 0.5, 0.0, n)).value) for n in (25, 100, 400)]
    assert values[0] > values[1] > values[2]


@pytest.mark.parametrize("tau", [1e-3, 0.01, 0.1, 1.0])
def test_coupling_residuals_with_solver_roots(params, roots25, tau):
    bc5, bc6 = coupling_residuals(tau, params, roots25, 25)
    assert abs(bc5) <= 1e-12 * params.w2
    assert abs(bc6) <= 1e-12 * params.w2


def test_coupling_residual_with_fixture_roots(params, fixture_roots):
    bc5, bc6 = coupling_residuals(0.1, params, fixture_roots, 25)
    assert abs(bc5) <= 5e-3 * params.w2
    assert bc5 == pytest.approx(FIXTURE_BC5_01, rel=1e-6)
    # the derivative condition holds identically, whatever the roots
    assert abs(bc6) <= 1e-12


def test_gradient_condition_trivial_when_beta_zero(roots25):
    params = ModelParams(w1=0.0, w2=1.0, beta_s=0.0, epsilon=2.64489e-3)
    d0 = derive(params)
    es = find_roots(d0, 10)
    _, bc6 = coupling_residuals(0.2, params, es, 10)
    assert bc6 == 0.0


def test_coupling_residual_linear_in_root_error(params, d, roots25):
    out = []
    for delta in (1e-6, 2e-6, 4e-6):
        shifted = eigenset_from_roots(d, [q + delta for q in roots25.roots], source="test")
        out.append(coupling_residuals(0.05, params, shifted, 25)[0])
    assert out[1] / out[0] == pytest.approx(2.0, rel=1e-3)
    assert out[2] / out[1] == pytest.approx(2.0, rel=1e-3)


def test_profiles_scale_with_w2(roots25, d):
    base = ModelParams(w1=-0.03421, w2=1.0, beta_s=1.0, epsilon=2.64489e-3)
    scaled = ModelParams(w1=-0.03421, w2=3.5, beta_s=1.0, epsilon=2.64489e-3)
    for fn in (concentration, temperature):
        a = fn(req(base, roots25, 0.3, 0.02)).value
        b = fn(req(scaled, roots25, 0.3, 0.02)).value
        assert b == pytest.approx(3.5 * a, rel=1e-15)
    assert transform_concentration(0.3, 2.0, scaled) == pytest.approx(
        3.5 * transform_concentration(0.3, 2.0, base), rel=1e-15
    )
    assert coupling_residuals(0.1, scaled, roots25, 25)[0] <= 1e-12 * 3.5


def test_gradients_match_finite_differences(params, roots25):
    h = 1e-6
    for fn, grad in ((concentration, concentration_gradient), (temperature, temperature_gradient)):
        up = fn(req(params, roots25, 0.4 + h, 0.05)).value
        down = fn(req(params, roots25, 0.4 - h, 0.05)).value
        assert grad(req(params, roots25, 0.4, 0.05)) == pytest.approx((up - down) / (2 * h), rel=1e-6)


def test_surface_transform_relation_to_formula1(params, d, roots25):
    # p * series_side(x=0) / w2 = 1 + (gamma/sqrt(eps)) * formula-1 series
    for p in (1e-2, 1.0, 10.0):
        series_side, _ = termwise_transform_check(0.0, p, params, roots25, 25)
        f1 = formula1_lhs(FormulaOperands(p, d, roots25), 25).value
        assert p * series_side / params.w2 == pytest.approx(1.0 + d.ratio * f1, rel=1e-12)


def test_termwise_transform_example(params, roots25):
    s, c = termwise_transform_check(0.5, 1.0, params, roots25, 25)
    assert abs(s - c) / abs(c) <= 1e-4


def test_termwise_transform_far_boundary(params, roots25):
    assert termwise_transform_check(1.0, 3.0, params, roots25, 25) == (0.0, 0.0)


@pytest.mark.parametrize("x", [0.0, 0.25, 0.5, 0.75])
@pytest.mark.parametrize("p", [0.1, 1.0, 10.0])
def test_termwise_transform_converges(params, solver_roots, x, p):
    errs = []
    for n in (25, 100, 400):
        s, c = termwise_transform_check(x, p, params, solver_roots, n)
        errs.append(abs(s - c) / abs(c))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-6


def test_profile_csv(params, roots25):
    pts = [concentration(req(params, roots25, x, 0.1)) for x in (0.0, 1.0)]
    buf = io.StringIO()
    text = write_profile_csv(pts, buf)
    assert buf.getvalue() == text
    lines = text.splitlines()
    assert lines[0] == "kind,x,tau,value"
    assert lines[2] == "concentration,1,0.10000000000000001,0"
    assert float(lines[1].split(",")[3]) == pts[0].value


def test_profile_values_finite_across_grid(params, solver_roots):
    for x in np.linspace(0, 1, 11):
        for tau in (1e-4, 1e-2, 1.0):
            for fn in (concentration, temperature):
                assert math.isfinite(fn(req(params, solver_roots, float(x), tau, 400)).value)
