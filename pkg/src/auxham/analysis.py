"""
Numerical limit-cycle measurement for the VdP oscillator and Floquet analysis
of the auxiliary variable.

Along the limit cycle x ~ 2 cos(wt) the auxiliary equation is approximately

    y'' + eps (1 - 4 cos^2 wt) y' + w^2 y = 0,

and ``y = u exp[(eps/2)(t + sin(2wt)/w)]`` turns it into the Hill equation
``u'' + p(t) u = 0`` with

    p(t) = w^2 - eps^2 (1 - 4 cos^2 wt)^2 / 4 - 2 eps w sin 2wt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .integrate import EventSpec, IntegratorConfig, find_events, integrate
from .models import SystemParams, vdp_pair_rhs, vdp_rhs

N_HARMONICS = 5
N_QUADRATURE = 4096


class LimitCycleError(RuntimeError):
    """No periodic steady state could be measured."""


@dataclass
class LimitCycleReport:
    period: float
    frequency: float
    amplitude: float
    harmonics: tuple[float, ...]
    settle_time: float
    n_periods: int
    t_ref: float  # time of the rising zero crossing starting the analysed cycle
    cycle: np.ndarray = field(repr=False)  # x over one period, N_QUADRATURE samples

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "frequency": self.frequency,
            "amplitude": self.amplitude,
            "harmonics": list(self.harmonics),
            "settle_time": self.settle_time,
            "n_periods": self.n_periods,
        }


def default_settle_time(p: SystemParams) -> float:
    return 30.0 / p.epsilon


def measure_limit_cycle(p: SystemParams, cfg: IntegratorConfig | None = None,
                        settle_time: float | None = None, n_periods: int = 20,
                        x0=(0.5, 0.0), auxiliary=None) -> LimitCycleReport:
    """Integrate VdP past its transient and measure the periodic orbit.

    The period is the mean spacing of ``n_periods + 1`` successive rising zero
    crossings of ``x`` after ``settle_time``. With ``auxiliary=(y0, ydot0)``
    the full four-dimensional pair is integrated instead; the x-quantities
    must not change.
    """
    if p.epsilon <= 0:
        raise LimitCycleError(f"no stable limit cycle for epsilon={p.epsilon}")
    settle = default_settle_time(p) if settle_time is None else settle_time
    t_end = settle + (n_periods + 2) * 2 * math.pi / p.omega * 1.1
    if auxiliary is None:
        traj = integrate(lambda t, s: vdp_rhs(s, p), x0, (0.0, t_end), cfg)
    else:
        z0 = (x0[0], x0[1], auxiliary[0], auxiliary[1])
        traj = integrate(lambda t, z: vdp_pair_rhs(z, p), z0, (0.0, t_end), cfg)
    crossings = find_events(traj, EventSpec(lambda s, t: s[0], direction=1),
                            t_min=settle)
    if len(crossings) < n_periods + 1:
        raise LimitCycleError(
            f"only {len(crossings)} rising crossings after t={settle}; "
            f"need {n_periods + 1}")
    times = np.array([c[0] for c in crossings[:n_periods + 1]])
    period = (times[-1] - times[0]) / n_periods
    t_ref = times[-1]

    theta = 2 * math.pi * np.arange(N_QUADRATURE) / N_QUADRATURE
    x = traj(t_ref + theta / (2 * math.pi) * period)[:, 0]
    harmonics = tuple(float(abs(2.0 / N_QUADRATURE * np.sum(x * np.exp(-1j * k * theta))))
                      for k in range(1, N_HARMONICS + 1))

    extrema = find_events(traj, EventSpec(lambda s, t: s[1]), t_min=times[-2])
    ext = [abs(s[0]) for t, s in extrema if t <= t_ref + period]
    amplitude = max(ext) if ext else float(np.max(np.abs(x)))

    return LimitCycleReport(period=float(period), frequency=2 * math.pi / period,
                            amplitude=float(amplitude), harmonics=harmonics,
                            settle_time=settle, n_periods=n_periods,
                            t_ref=float(t_ref), cycle=x)


# --- Hill / Floquet --------------------------------------------------------

def hill_p(t, p: SystemParams):
    w, e = p.omega, p.epsilon
    c = np.cos(w * t)
    return w * w - e * e * (1 - 4 * c * c) ** 2 / 4 - 2 * e * w * np.sin(2 * w * t)


def envelope_factor(t, p: SystemParams):
    """``y / u = exp[(eps/2)(t + sin(2wt)/w)]``."""
    return np.exp(0.5 * p.epsilon * (t + np.sin(2 * p.omega * t) / p.omega))


@dataclass
class FloquetReport:
    monodromy: np.ndarray
    multipliers: np.ndarray
    max_multiplier: float
    envelope_growth: float
    period: float

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.monodromy))

    @property
    def trace(self) -> float:
        return float(np.trace(self.monodromy))

    @property
    def growth_per_period(self) -> float:
        """Predicted growth factor of y per period: Floquet times envelope."""
        return self.max_multiplier * self.envelope_growth

    @property
    def resonant(self) -> bool:
        return self.growth_per_period > 1.0


HILL_CONFIG = IntegratorConfig(rel_tol=1e-13, abs_tol=1e-13, method="DOP853")


def monodromy(p: SystemParams, cfg: IntegratorConfig | None = None,
              minimal: bool = False) -> FloquetReport:
    """Monodromy matrix of ``u'' + p(t) u = 0`` over ``2 pi / w``.

    ``minimal=True`` uses the minimal period ``pi / w`` of ``p(t)``; the
    multipliers over the full period are the squares of those.
    """
    cfg = HILL_CONFIG if cfg is None else cfg
    T = (math.pi if minimal else 2 * math.pi) / p.omega

    def rhs(t, s):
        return np.array([s[1], -hill_p(t, p) * s[0]])

    cols = [integrate(rhs, s0, (0.0, T), cfg).final for s0 in ((1.0, 0.0), (0.0, 1.0))]
    M = np.column_stack(cols)
    mult = np.linalg.eigvals(M)
    return FloquetReport(monodromy=M, multipliers=mult,
                         max_multiplier=float(np.max(np.abs(mult))),
                         envelope_growth=float(envelope_factor(T, p)), period=T)


@dataclass
class AuxiliaryGrowth:
    measured: float   # growth of (y, ydot) per period along the true flow
    predicted: float  # Floquet multiplier times envelope factor
    envelope_maxima: np.ndarray  # max |y| in each period, from y0

    @property
    def ratio(self) -> float:
        return self.predicted / self.measured


def auxiliary_growth_check(p: SystemParams, cfg: IntegratorConfig | None = None,
                           horizon: int = 10, settle_time: float | None = None,
                           y0=(1e-3, 0.0)) -> AuxiliaryGrowth:
    """Compare the Hill-equation growth prediction with direct integration.

    VdP is first settled onto its limit cycle (skipped when ``eps == 0``),
    then the pair is integrated for ``horizon`` periods of ``2 pi / w`` from two
    independent auxiliary initial states. The y-block is linear in ``(y, ydot)``,
    so the two runs give the propagator over the horizon; the measured growth
    per period is its spectral radius to the power ``1/horizon``.
    """
    T = 2 * math.pi / p.omega
    if p.epsilon > 0:
        settle = default_settle_time(p) if settle_time is None else settle_time
        xs = integrate(lambda t, s: vdp_rhs(s, p), (0.5, 0.0), (0.0, settle), cfg).final
    else:
        xs = np.array([2.0, 0.0])

    def run(y_init):
        z0 = (xs[0], xs[1], y_init[0], y_init[1])
        return integrate(lambda t, z: vdp_pair_rhs(z, p), z0, (0.0, horizon * T), cfg)

    scale = float(np.hypot(*y0)) or 1e-3
    cols = [run((scale, 0.0)).final[2:] / scale,
            run((0.0, scale)).final[2:] / scale]
    prop = np.column_stack(cols)
    measured = float(np.max(np.abs(np.linalg.eigvals(prop)))) ** (1.0 / horizon)

    traj = run(y0)
    per = 64
    grid = np.linspace(0.0, horizon * T, per * horizon + 1)
    ys = np.abs(traj(grid)[:, 2])
    maxima = np.array([ys[k * per:(k + 1) * per + 1].max() for k in range(horizon)])
    predicted = monodromy(p).growth_per_period
    return AuxiliaryGrowth(measured=measured, predicted=float(predicted),
                           envelope_maxima=maxima)
