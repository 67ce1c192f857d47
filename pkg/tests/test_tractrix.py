import math

import numpy as np
import pytest
import sympy as sp
from scipy.integrate import solve_ivp

from circdini.circular import CircularTractrixParams, eval_v, stationary_v, Regime
from circdini.exceptions import IntegrationError, ParameterError
from circdini.frenet import DirectrixSpec, circle_directrix_spec, circle_frenet, circle_position
from circdini.tractrix import (
    IntegrationConfig,
    integrate,
    ode_rhs,
    tangency_residual,
    tangent_vector,
    tractrix_position,
)


def test_rhs_circle_matches_explicit_system():
    r = 1.7
    v = np.array([0.3, -0.5, math.sqrt(1 - 0.34)])
    v1, v2, v3 = v
    expected = [v2 / r + v1 * v1 - 1, -v1 / r + v1 * v2, v1 * v3]
    assert np.allclose(ode_rhs(v, circle_directrix_spec(r)), expected, atol=1e-15)


def test_rhs_general_components():
    k = (1.0, 0.5, 0.25)
    v = np.array([0.1, 0.2, 0.3, 0.4])
    out = ode_rhs(v, DirectrixSpec(k))
    expected = [
        k[0] * v[1] + v[0] * v[0] - 1,
        -k[0] * v[0] + k[1] * v[2] + v[0] * v[1],
        -k[1] * v[1] + k[2] * v[3] + v[0] * v[2],
        -k[2] * v[2] + v[0] * v[3],
    ]
    assert np.allclose(out, expected, atol=1e-15)


@pytest.mark.parametrize(
    "r,state",
    [(2.0, (math.sqrt(3) / 2, 0.5, 0.0)), (1.0, (0.0, 1.0, 0.0)), (0.5, (0.0, 0.5, math.sqrt(0.75)))],
)
def test_rhs_vanishes_at_fixed_points(r, state):
    assert np.linalg.norm(ode_rhs(state, circle_directrix_spec(r))) < 1e-15


def test_rhs_dimension_mismatch():
    with pytest.raises(ParameterError):
        ode_rhs([1.0, 0.0], circle_directrix_spec(2.0))


# ---- integrate ------------------------------------------------------------


def _arrays(samples):
    return np.array([p.s for p in samples]), np.array([p.state for p in samples])


def test_integrate_matches_closed_form_r2():
    params = CircularTractrixParams.general(2.0, 1.0, 0.0, 0.0)
    samples = integrate(circle_directrix_spec(2.0), (0.0, 1.0, 0.0), IntegrationConfig(0.0, 5.0, h=1e-3))
    s, v = _arrays(samples)
    assert s[0] == 0.0 and s[-1] == pytest.approx(5.0)
    assert np.max(np.abs(v - eval_v(params, s))) < 1e-6


@pytest.mark.parametrize("r,v0", [(1.0, (0.0, 1.0, 0.0)), (0.5, (0.0, 0.5, math.sqrt(0.75)))])
def test_integrate_stationary_stays_put(r, v0):
    samples = integrate(circle_directrix_spec(r), v0, IntegrationConfig(-3.0, 3.0, h=1e-2))
    _, v = _arrays(samples)
    assert np.max(np.abs(v - np.asarray(v0))) < 1e-13


def test_integrate_runs_both_directions_and_sorts():
    samples = integrate(circle_directrix_spec(2.0), (0.0, 1.0, 0.0), IntegrationConfig(-1.0, 2.0, h=0.1))
    s, _ = _arrays(samples)
    assert np.all(np.diff(s) > 0)
    assert s[0] == pytest.approx(-1.0) and s[-1] == pytest.approx(2.0)
    assert 0.0 in s


def test_integrate_interval_not_containing_zero():
    samples = integrate(circle_directrix_spec(2.0), (0.0, 1.0, 0.0), IntegrationConfig(1.0, 2.0, h=0.1))
    s, v = _arrays(samples)
    assert s[0] == pytest.approx(1.0) and s[-1] == pytest.approx(2.0)
    ref = eval_v(CircularTractrixParams.general(2.0, 1.0, 0.0), s)
    assert np.max(np.abs(v - ref)) < 1e-6


@pytest.mark.parametrize(
    "params",
    [
        CircularTractrixParams.general(2.0, 0.6, 0.8, 0.2),
        CircularTractrixParams.general(1.0, None, 0.7, -0.4),
        CircularTractrixParams.general(0.5, math.sqrt(2), 1.0, 0.3),
    ],
    ids=["sup", "unit", "sub"],
)
def test_norm_drift_small_over_ten_units(params):
    samples = integrate(circle_directrix_spec(params.r), eval_v(params, 0.0), IntegrationConfig(-10.0, 10.0))
    assert max(p.norm_drift for p in samples) < 1e-8


def test_four_dimensional_against_scipy():
    spec = DirectrixSpec((1.0, 0.5, 0.25))
    v0 = np.array([1.0, 0.0, 0.0, 0.0])
    samples = integrate(spec, v0, IntegrationConfig(-10.0, 10.0, h=1e-3))
    s, v = _arrays(samples)
    assert max(p.norm_drift for p in samples) < 1e-8
    gen = spec.generator()

    def f(_, y):
        out = gen @ y + y[0] * y
        out[0] -= 1
        return out

    fwd = solve_ivp(f, (0, 10), v0, rtol=1e-12, atol=1e-13, dense_output=True)
    bwd = solve_ivp(f, (0, -10), v0, rtol=1e-12, atol=1e-13, dense_output=True)
    ref = np.where(s[:, None] >= 0, fwd.sol(np.clip(s, 0, None)).T, bwd.sol(np.clip(s, None, 0)).T)
    assert np.max(np.abs(v - ref)) < 1e-8


def test_sample_fields():
    samples = integrate(circle_directrix_spec(2.0), (0.0, 1.0, 0.0), IntegrationConfig(-1.0, 1.0, h=0.01))
    for p in samples:
        assert p.speed == pytest.approx(abs(p.state[0]), abs=1e-12)
        assert p.regular == (p.speed > 1e-8)
        expected = circle_position(2.0, p.s) + p.state @ circle_frenet(2.0, p.s).vectors
        assert np.allclose(p.position, expected, atol=1e-14)
    at_zero = [p for p in samples if p.s == 0.0][0]
    assert not at_zero.regular
    assert np.allclose(at_zero.position, [1.0, 0.0, 0.0])


def test_speed_identity_by_finite_differences():
    params = CircularTractrixParams.general(2.0, 0.6, 0.8, 0.0)
    h = 1e-3
    samples = integrate(circle_directrix_spec(2.0), eval_v(params, 0.0), IntegrationConfig(-3.0, 3.0, h=h))
    pos = np.array([p.position for p in samples])
    s, v = _arrays(samples)
    fd_speed = np.linalg.norm(np.diff(pos, axis=0), axis=1) / np.diff(s)
    mid = np.abs(eval_v(params, 0.5 * (s[1:] + s[:-1]))[:, 0])
    regular = mid > 1e-3
    assert np.max(np.abs(fd_speed - mid)[regular]) < 1e-5


def test_convergence_order_r2():
    params = CircularTractrixParams.general(2.0, 1.0, 0.0)
    errs = []
    for h in (0.05, 0.025):
        s, v = _arrays(integrate(circle_directrix_spec(2.0), (0.0, 1.0, 0.0), IntegrationConfig(-5.0, 5.0, h=h)))
        errs.append(np.max(np.abs(v - eval_v(params, s))))
    assert errs[0] / errs[1] >= 12.0


def test_initial_norm_violation_rejected():
    with pytest.raises(ParameterError):
        integrate(circle_directrix_spec(2.0), (0.0, 1.1, 0.0), IntegrationConfig(0.0, 1.0))


def test_drift_aborts():
    # a huge step makes RK4 leave the sphere at once
    with pytest.raises(IntegrationError):
        integrate(DirectrixSpec((30.0, 0.0)), (0.0, 1.0, 0.0), IntegrationConfig(0.0, 20.0, h=1.0))


def test_renormalize_keeps_unit_norm():
    samples = integrate(
        DirectrixSpec((3.0, 0.0)), (0.0, 1.0, 0.0), IntegrationConfig(0.0, 5.0, h=0.05, renormalize=True, norm_tolerance=1e-3)
    )
    assert max(p.norm_drift for p in samples) < 1e-14


@pytest.mark.parametrize(
    "kw",
    [dict(s_min=1.0, s_max=1.0), dict(s_min=0.0, s_max=1.0, h=0.0), dict(s_min=0.0, s_max=1.0, h=2.0)],
)
def test_config_validation(kw):
    with pytest.raises(ParameterError):
        IntegrationConfig(**kw)


# ---- position and tangency -------------------------------------------------


def test_tractrix_position_examples():
    frame = circle_frenet(2.0, 0.0)
    assert np.allclose(tractrix_position((2, 0, 0), frame, (0, 1, 0)), (1, 0, 0))
    for s in (0.0, 1.3, -4.0):
        base = circle_position(2.0, s)
        assert np.allclose(tractrix_position(base, circle_frenet(2.0, s), (0, 0, 1)), base + [0, 0, 1])
        one = circle_position(1.0, s)
        assert np.allclose(tractrix_position(one, circle_frenet(1.0, s), (0, 1, 0)), 0.0, atol=1e-15)


def _symbolic_dv(params):
    """d v / ds of the closed forms by symbolic differentiation."""
    s = sp.symbols("s", real=True)
    r, c1, c2, c3 = (sp.nsimplify(x) if float(x).is_integer() else sp.Float(x, 30)
                     for x in (params.r, params.c1, params.c2, params.c3))
    if params.regime is Regime.UNIT:
        u = s + c3
        den = c1 + u ** 2
        v = [-2 * u / den, 1 - 2 / den, 2 * c2 / den]
    else:
        hyper = params.regime is Regime.SUP_UNIT
        lam = sp.sqrt(r ** 2 - 1) / r if hyper else sp.sqrt(1 - r ** 2) / r
        th = lam * s + c3
        cs, sn = (sp.cosh(th), sp.sinh(th)) if hyper else (sp.cos(th), sp.sin(th))
        den = c1 / r + cs
        v = [(-1 if hyper else 1) * lam * sn / den, (c1 + cs / r) / den, lam * c2 / den]
    return sp.lambdify(s, [sp.diff(x, s) for x in v], "numpy")


@pytest.mark.parametrize(
    "params",
    [
        CircularTractrixParams.general(2.0, 0.6, 0.8, 0.3),
        CircularTractrixParams.general(1.0, None, 0.5, 1.0),
        CircularTractrixParams.general(0.5, math.sqrt(2), 1.0, -0.2),
    ],
    ids=["sup", "unit", "sub"],
)
def test_tangency_residual_on_closed_forms(params):
    dv = _symbolic_dv(params)
    spec = circle_directrix_spec(params.r)
    for s in np.linspace(-4, 4, 17):
        res = tangency_residual(spec, eval_v(params, s), np.array(dv(s), dtype=float))
        assert res < 1e-10


def test_tangency_along_first_frame_vector():
    for spec in (circle_directrix_spec(2.0), DirectrixSpec((1.0, 0.5, 0.25))):
        state = np.zeros(spec.dimension)
        state[0] = 1.0
        assert tangency_residual(spec, state) < 1e-15


def test_tangency_detects_perturbed_state():
    spec = circle_directrix_spec(2.0)
    base = np.array([0.0, 1.0, 0.0])
    perturbed = base + [0.1, 0.0, 0.0]
    perturbed /= np.linalg.norm(perturbed)
    # the perturbed state paired with the derivative of the unperturbed solution
    assert tangency_residual(spec, perturbed, ode_rhs(base, spec)) > 1e-3


def test_tangent_identity():
    spec = DirectrixSpec((1.0, 0.5, 0.25))
    v = np.array([0.5, 0.5, 0.5, 0.5])
    assert np.allclose(tangent_vector(spec, v), v[0] * v, atol=1e-15)


def test_stationary_state_lookup_consistent():
    assert np.allclose(stationary_v(Regime.SUP_UNIT, 2.0, 1), (math.sqrt(3) / 2, 0.5, 0.0))
