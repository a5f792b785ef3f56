import math

import numpy as np
import pytest

from auxham.integrate import (
    EventSpec,
    IntegrationError,
    IntegratorConfig,
    find_events,
    integrate,
    rk4_step,
)


def sho(t, s):
    return np.array([s[1], -s[0]])


def test_adaptive_accuracy():
    for method in ("RK45", "DOP853"):
        traj = integrate(sho, (1.0, 0.0), (0.0, 30.0), IntegratorConfig(method=method))
        assert traj.final[0] == pytest.approx(math.cos(30.0), abs=1e-8)
        assert traj(12.3)[0] == pytest.approx(math.cos(12.3), abs=1e-8)


def test_rk4_fourth_order():
    errs = []
    for h in (0.1, 0.05, 0.025):
        s = np.array([1.0, 0.0])
        n = round(2.0 / h)
        for i in range(n):
            s = rk4_step(sho, i * h, s, h)
        errs.append(abs(s[0] - math.cos(2.0)))
    rates = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert all(3.8 < r < 4.2 for r in rates), rates


def test_rk4_dense_output():
    traj = integrate(sho, (1.0, 0.0), (0.0, 10.0), IntegratorConfig(method="RK4", step=0.01))
    ts = np.linspace(0, 10, 777)
    assert np.max(np.abs(traj(ts)[:, 0] - np.cos(ts))) < 1e-8
    assert traj.times[-1] == 10.0


def test_blowup_reports_partial():
    cfg = IntegratorConfig(max_norm=1e6)
    with pytest.raises(IntegrationError) as info:
        integrate(lambda t, s: s * s, (1.0,), (0.0, 2.0), cfg)
    err = info.value
    assert 0.9 < err.t_fail < 1.0
    assert err.partial is not None and err.partial.t_end == err.t_fail


def test_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(rel_tol=0)
    with pytest.raises(ValueError):
        IntegratorConfig(method="Euler")
    with pytest.raises(ValueError):
        integrate(sho, (1.0, 0.0), (1.0, 0.0))


def test_events_locate_zeros():
    traj = integrate(sho, (0.0, 1.0), (0.0, 20.0), IntegratorConfig(rel_tol=1e-12, abs_tol=1e-12))
    rising = find_events(traj, EventSpec(lambda s, t: s[0], direction=1))
    # a zero at the start counts when g leaves it in the requested direction
    expected = [2 * math.pi * k for k in range(0, 4)]
    assert [t for t, _ in rising] == pytest.approx(expected, abs=1e-10)
    both = find_events(traj, EventSpec(lambda s, t: s[0]), t_min=0.5)
    assert len(both) == 6
    assert len(find_events(traj, EventSpec(lambda s, t: s[0], count=2), t_min=0.5)) == 2
