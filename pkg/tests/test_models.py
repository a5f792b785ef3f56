import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from auxham.integrate import IntegratorConfig, integrate
from auxham.models import (
    VDP_DAMPING,
    DampingFunction,
    OverdampedError,
    SystemParams,
    Trajectory,
    dsho_closed_form,
    dsho_pair_rhs,
    dsho_rhs,
    symmetric_ab_divergence,
    symmetric_ab_rhs,
    vdp_pair_rhs,
    vdp_rhs,
)

finite = st.floats(-3, 3, allow_nan=False)


def test_params_validation():
    with pytest.raises(ValueError):
        SystemParams(omega=0.0)
    with pytest.raises(ValueError):
        SystemParams(lam=-0.1)
    with pytest.raises(ValueError):
        SystemParams(epsilon=float("nan"))
    p = SystemParams(epsilon=0.2)
    assert p.with_(omega=2.0).omega == 2.0 and p.with_(omega=2.0).epsilon == 0.2


def test_overdamped_rejected():
    with pytest.raises(OverdampedError):
        SystemParams(lam=2.0, Omega_big=1.0).dsho_frequency
    assert SystemParams(lam=0.6, Omega_big=1.0).dsho_frequency == pytest.approx(0.8)


def test_trajectory_requires_increasing_times():
    with pytest.raises(ValueError):
        Trajectory(np.array([0.0, 1.0, 1.0]), np.zeros((3, 2)))


@pytest.mark.parametrize("x0,v0", [(1.0, 0.0), (0.3, -1.2), (0.0, 2.0)])
def test_dsho_matches_closed_form(x0, v0):
    p = SystemParams(lam=0.15, Omega_big=1.3)
    cfg = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-12)
    traj = integrate(lambda t, s: np.array(dsho_rhs(s, p)), (x0, v0), (0.0, 20.0), cfg)
    for t in (0.5, 7.0, 20.0):
        assert np.allclose(traj(t), dsho_closed_form(p, x0, v0, t), atol=1e-9)


def test_bateman_partner_is_time_reverse():
    # y(t) of the anti-damped partner equals x(-t) of the damped oscillator
    p = SystemParams(lam=0.2, Omega_big=1.0)
    z = integrate(lambda t, z: dsho_pair_rhs(z, p), (0.0, 0.0, 0.7, 0.1), (0.0, 5.0),
                  IntegratorConfig(rel_tol=1e-12, abs_tol=1e-12)).final
    x, v = dsho_closed_form(p, 0.7, -0.1, -5.0)
    assert z[2] == pytest.approx(x, abs=1e-9) and z[3] == pytest.approx(-v, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(finite, finite, finite, finite, finite, finite)
def test_vdp_x_block_ignores_auxiliary(x, v, y, w, y2, w2):
    p = SystemParams(epsilon=0.4)
    a = vdp_pair_rhs((x, v, y, w), p)
    b = vdp_pair_rhs((x, v, y2, w2), p)
    assert np.array_equal(a[:2], b[:2])
    assert np.allclose(a[:2], vdp_rhs((x, v), p))


@settings(max_examples=50, deadline=None)
@given(finite, finite, finite, finite)
def test_symmetric_pair_is_divergence_free(x, v, y, w):
    p = SystemParams(epsilon=0.3)
    z = np.array([x, v, y, w])
    h = 1e-6
    div = 0.0
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        div += (symmetric_ab_rhs(z + e, p)[i] - symmetric_ab_rhs(z - e, p)[i]) / (2 * h)
    assert abs(div) < 1e-6
    assert symmetric_ab_divergence(z, p) == pytest.approx(0.0, abs=1e-12)


def test_damping_function_derivative_fallback():
    f = DampingFunction(lambda x: math.sin(x) + x**3)
    for x in (-2.0, 0.0, 0.3, 5.0):
        assert f.derivative(x) == pytest.approx(math.cos(x) + 3 * x * x, rel=1e-7, abs=1e-8)
    assert VDP_DAMPING(2.0) == 3.0 and VDP_DAMPING.derivative(2.0) == 4.0
