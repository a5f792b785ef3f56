import math

import numpy as np
import pytest

from auxham.analysis import (
    LimitCycleError,
    auxiliary_growth_check,
    envelope_factor,
    hill_p,
    measure_limit_cycle,
    monodromy,
)
from auxham.models import SystemParams


@pytest.fixture(scope="module")
def rep():
    return measure_limit_cycle(SystemParams(epsilon=0.1))


def test_report_fields(rep):
    assert len(rep.harmonics) == 5
    assert rep.frequency == pytest.approx(2 * math.pi / rep.period)
    assert rep.amplitude == pytest.approx(rep.harmonics[0], rel=0.05)
    # odd symmetry of the cycle: even harmonics vanish
    assert rep.harmonics[1] < 1e-8 and rep.harmonics[3] < 1e-8
    assert set(rep.to_dict()) >= {"period", "frequency", "amplitude", "harmonics"}


def test_small_eps_frequency():
    r = measure_limit_cycle(SystemParams(epsilon=0.01))
    assert r.frequency == pytest.approx(1 - 1e-4 / 16, abs=1e-7)


def test_auxiliary_does_not_change_x():
    # y is parametrically amplified, so keep the window short
    p = SystemParams(epsilon=0.1)
    a = measure_limit_cycle(p, settle_time=30.0, n_periods=4)
    b = measure_limit_cycle(p, settle_time=30.0, n_periods=4, auxiliary=(0.3, -0.2))
    assert b.period == pytest.approx(a.period, rel=1e-7)
    assert b.amplitude == pytest.approx(a.amplitude, rel=1e-7)


def test_no_cycle_without_damping():
    with pytest.raises(LimitCycleError):
        measure_limit_cycle(SystemParams(epsilon=0.0))


def test_hill_transform_consistency():
    # y = u * envelope solves y'' + eps(1 - 4cos^2) y' + y = 0 iff u'' + p u = 0
    p = SystemParams(epsilon=0.2)
    t = np.linspace(0, 7, 50)
    e = envelope_factor(t, p)
    h = 1e-4
    de = (envelope_factor(t + h, p) - envelope_factor(t - h, p)) / (2 * h)
    d2e = (envelope_factor(t + h, p) - 2 * e + envelope_factor(t - h, p)) / h**2
    g = p.epsilon * (1 - 4 * np.cos(t) ** 2)
    # y'' + g y' + y = e (u'' + (2e'/e + g) u' + (e''/e + g e'/e + 1) u)
    assert np.allclose(2 * de / e + g, 0, atol=1e-6)
    assert np.allclose(d2e / e + g * de / e + 1, hill_p(t, p), atol=1e-5)


def test_monodromy_properties():
    f0 = monodromy(SystemParams(epsilon=0.0))
    assert f0.trace == pytest.approx(2.0, abs=1e-9)
    assert f0.det == pytest.approx(1.0, abs=1e-12)
    f = monodromy(SystemParams(epsilon=0.1))
    half = monodromy(SystemParams(epsilon=0.1), minimal=True)
    assert f.det == pytest.approx(1.0, abs=1e-8)
    assert np.allclose(np.sort(np.abs(f.multipliers)),
                       np.sort(np.abs(half.multipliers) ** 2), rtol=1e-8)
    assert f.resonant


def test_growth_prediction_ratio():
    g = auxiliary_growth_check(SystemParams(epsilon=0.05), horizon=10)
    assert 0.5 < g.ratio < 2.0
    assert g.envelope_maxima.shape == (10,)
