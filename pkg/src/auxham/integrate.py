"""
Explicit time integration with dense output and event location.

Adaptive integration is delegated to scipy's embedded Runge-Kutta pairs
(Dormand-Prince 5(4) by default, DOP853 on request); fixed-step classical RK4
is implemented here with a cubic Hermite interpolant. Events are located on
the dense output by bracketing sign changes and refining with Brent's method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .models import Trajectory

ADAPTIVE_METHODS = ("RK45", "DOP853")


class IntegrationError(RuntimeError):
    """Integration stopped before the end of the requested span.

    ``t_fail`` is the last time reached and ``partial`` the trajectory up to it.
    """

    def __init__(self, message, t_fail, partial=None):
        super().__init__(f"{message} (stopped at t={t_fail:.6g})")
        self.t_fail = t_fail
        self.partial = partial


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-10
    max_step: float = math.inf
    method: str = "RK45"
    step: float = 1e-2  # fixed-step RK4 only
    max_norm: float = 1e12  # treat larger states as blow-up

    def __post_init__(self):
        if not (0 < self.rel_tol < 1 and 0 < self.abs_tol < 1):
            raise ValueError("tolerances must lie in (0, 1)")
        if not self.max_step > 0 or not self.step > 0:
            raise ValueError("step sizes must be positive")
        if self.method not in ADAPTIVE_METHODS + ("RK4",):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class EventSpec:
    """Zero of ``g(state, t)``.

    ``direction`` is +1 for rising crossings, -1 for falling and 0 for both.
    ``count`` limits the number of events returned (None for all).
    """

    g: Callable[[np.ndarray, float], float]
    direction: int = 0
    count: int | None = None


def _wrap_dense(sol):
    def interpolant(t):
        out = sol(t)
        return out.T if np.ndim(t) else out
    return interpolant


def integrate(rhs, s0, t_span, cfg: IntegratorConfig | None = None) -> Trajectory:
    """Integrate ``s' = rhs(t, s)`` over ``t_span`` and return a dense trajectory.

    Raises :class:`IntegrationError` when the step size underflows or the state
    exceeds ``cfg.max_norm``.
    """
    cfg = IntegratorConfig() if cfg is None else cfg
    t0, t1 = map(float, t_span)
    if not t1 > t0:
        raise ValueError("t_span must be increasing")
    s0 = np.asarray(s0, dtype=float)
    if cfg.method == "RK4":
        return _integrate_rk4(rhs, s0, t0, t1, cfg)

    def blowup(t, s):
        return cfg.max_norm - np.max(np.abs(s))
    blowup.terminal = True

    sol = solve_ivp(rhs, (t0, t1), s0, method=cfg.method, rtol=cfg.rel_tol,
                    atol=cfg.abs_tol, max_step=cfg.max_step, dense_output=True,
                    events=blowup)
    traj = Trajectory(sol.t, sol.y.T, dense=True, interpolant=_wrap_dense(sol.sol))
    if sol.status == -1:
        raise IntegrationError(sol.message, float(sol.t[-1]), traj)
    if sol.status == 1 or not np.all(np.isfinite(sol.y[:, -1])):
        raise IntegrationError("state blew up", float(sol.t[-1]), traj)
    return traj


def rk4_step(rhs, t, s, h):
    k1 = rhs(t, s)
    k2 = rhs(t + h / 2, s + h / 2 * k1)
    k3 = rhs(t + h / 2, s + h / 2 * k2)
    k4 = rhs(t + h, s + h * k3)
    return s + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _integrate_rk4(rhs, s0, t0, t1, cfg):
    n = max(1, int(math.ceil((t1 - t0) / cfg.step - 1e-9)))
    ts = np.linspace(t0, t1, n + 1)
    ss = np.empty((n + 1, s0.size))
    fs = np.empty_like(ss)
    ss[0] = s0
    fs[0] = rhs(t0, s0)
    for i in range(n):
        ss[i + 1] = rk4_step(rhs, ts[i], ss[i], ts[i + 1] - ts[i])
        fs[i + 1] = rhs(ts[i + 1], ss[i + 1])
        if not np.all(np.isfinite(ss[i + 1])) or np.max(np.abs(ss[i + 1])) > cfg.max_norm:
            partial = Trajectory(ts[:i + 1], ss[:i + 1])
            raise IntegrationError("state blew up", float(ts[i]), partial)

    def interpolant(t):
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        i = np.clip(np.searchsorted(ts, tt, side="right") - 1, 0, n - 1)
        h = (ts[i + 1] - ts[i])[:, None]
        u = ((tt - ts[i]) / h[:, 0])[:, None]
        h00 = 2 * u**3 - 3 * u**2 + 1
        h10 = u**3 - 2 * u**2 + u
        h01 = -2 * u**3 + 3 * u**2
        h11 = u**3 - u**2
        out = h00 * ss[i] + h10 * h * fs[i] + h01 * ss[i + 1] + h11 * h * fs[i + 1]
        return out if np.ndim(t) else out[0]

    return Trajectory(ts, ss, dense=True, interpolant=interpolant)


def find_events(traj: Trajectory, ev: EventSpec, oversample: int = 4,
                t_min: float | None = None) -> list[tuple[float, np.ndarray]]:
    """Locate zeros of ``ev.g`` along a dense trajectory.

    Each integrator step is subdivided ``oversample`` times to bracket sign
    changes; brackets are refined on the interpolant to near machine precision.
    """
    if not traj.dense:
        raise ValueError("event location needs a dense trajectory")
    ts = traj.times
    if oversample > 1:
        frac = np.arange(oversample) / oversample
        grid = (ts[:-1, None] + np.diff(ts)[:, None] * frac).ravel()
        grid = np.append(grid, ts[-1])
    else:
        grid = ts
    if t_min is not None:
        grid = grid[grid >= t_min]
    if grid.size < 2:
        return []
    states = traj(grid)
    gv = np.array([ev.g(s, t) for s, t in zip(states, grid)])
    events = []
    for k in range(grid.size - 1):
        a, b = gv[k], gv[k + 1]
        if a == 0.0 and k > 0:
            continue
        if not ((a < 0 <= b) or (a > 0 >= b) or a == 0.0):
            continue
        rising = b > a
        if ev.direction > 0 and not rising or ev.direction < 0 and rising:
            continue
        if a == 0.0:
            tz = grid[k]
        elif b == 0.0:
            tz = grid[k + 1]
        else:
            tz = brentq(lambda t: ev.g(traj(t), t), grid[k], grid[k + 1],
                        xtol=1e-14 * max(1.0, abs(grid[k])), rtol=4 * np.finfo(float).eps)
        if events and tz == events[-1][0]:
            continue
        events.append((float(tz), np.asarray(traj(tz))))
        if ev.count is not None and len(events) >= ev.count:
            break
    return events
