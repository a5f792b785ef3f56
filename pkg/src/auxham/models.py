"""
Vector fields for dissipative oscillators and their auxiliary partners.

Every system is written in first-order form. Four-dimensional systems use the
state ordering ``(x, xdot, y, ydot)``; the physical variable is ``x`` and ``y``
is the auxiliary (anti-damped) partner. Two-dimensional systems use
``(x, xdot)``.

Systems:
    damped SHO            x'' = -2 lam x' - Omega^2 x   (sign flag for the partner)
    VdP + auxiliary VdP   x'' = -eps (a x^2 - 1) x' - w^2 x
                          y'' = +eps (a x^2 - 1) y' - w^2 y
    symmetric a/b system  same with a x^2 + b y^2 inside the bracket
    forced VdP pair       stiffness w^2 + F1 cos(gamma t), drive F2 cos(Omega t)
    Lienard pair          x'' = -eps f(x) x' - w^2 x, partner sign-flipped
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple

import numpy as np


class OverdampedError(ValueError):
    """Raised when the underdamped closed form is requested with Omega^2 <= lambda^2."""


@dataclass(frozen=True)
class SystemParams:
    """All model constants.

    ``alpha`` is the bookkeeping coefficient of the nonlinear term and ``beta``
    the coefficient of ``y^2`` in the symmetric system. ``lam`` and
    ``Omega_big`` belong to the damped SHO. ``F1``/``gamma`` is the parametric
    forcing and ``F2``/``Omega_ext`` the external forcing of the forced VdP.
    """

    epsilon: float = 0.0
    omega: float = 1.0
    alpha: float = 1.0
    beta: float = 0.0
    lam: float = 0.0
    Omega_big: float = 1.0
    F1: float = 0.0
    gamma: float = 0.0
    F2: float = 0.0
    Omega_ext: float = 0.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        for name in ("epsilon", "omega", "alpha", "beta", "lam", "Omega_big",
                     "F1", "gamma", "F2", "Omega_ext"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.lam < 0:
            raise ValueError(f"lam must be non-negative, got {self.lam}")

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    @property
    def dsho_frequency(self) -> float:
        """Underdamped DSHO frequency sqrt(Omega^2 - lambda^2)."""
        d = self.Omega_big**2 - self.lam**2
        if d <= 0:
            raise OverdampedError(
                f"Omega^2 = {self.Omega_big**2} <= lambda^2 = {self.lam**2}")
        return math.sqrt(d)


class PhaseState4(NamedTuple):
    """Canonical state of the doubled system."""

    x: float
    y: float
    p_x: float
    p_y: float


class State2(NamedTuple):
    x: float
    v: float


@dataclass
class Trajectory:
    """Sampled solution of an ODE.

    ``states`` has shape ``(len(times), dim)``. When ``dense`` is true,
    ``interpolant(t)`` evaluates the continuous extension of the integrator.
    """

    times: np.ndarray
    states: np.ndarray
    dense: bool = False
    interpolant: Callable[[float], np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.atleast_2d(np.asarray(self.states, dtype=float))
        if self.states.shape[0] != self.times.shape[0]:
            raise ValueError("times and states must have equal lengths")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        if self.dense and self.interpolant is None:
            raise ValueError("dense trajectory needs an interpolant")

    def __call__(self, t):
        if not self.dense:
            raise ValueError("trajectory has no dense output")
        return self.interpolant(t)

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def vdp_damping(x):
    """Van der Pol damping function f(x) = x^2 - 1."""
    return x * x - 1.0


@dataclass(frozen=True)
class DampingFunction:
    """Damping function f(x) for Lienard systems, with optional analytic derivative.

    Without ``df`` the derivative falls back to a central difference with step
    ``1e-6 * max(1, |x|)``.
    """

    f: Callable[[float], float]
    df: Callable[[float], float] | None = None

    def __call__(self, x):
        return self.f(x)

    def derivative(self, x):
        if self.df is not None:
            return self.df(x)
        h = 1e-6 * max(1.0, abs(x))
        return (self.f(x + h) - self.f(x - h)) / (2 * h)


VDP_DAMPING = DampingFunction(vdp_damping, lambda x: 2.0 * x)


# --- damped SHO ------------------------------------------------------------

def dsho_rhs(s, p: SystemParams, anti: bool = False) -> tuple[float, float]:
    """Return ``(xdot, xddot)`` for the damped SHO.

    With ``anti=True`` the damping sign is flipped, giving the Bateman partner
    ``y'' = +2 lam y' - Omega^2 y``.
    """
    x, v = s
    sign = 1.0 if anti else -1.0
    return v, sign * 2.0 * p.lam * v - p.Omega_big**2 * x


def dsho_closed_form(p: SystemParams, x0: float, v0: float, t: float) -> tuple[float, float]:
    """Exact underdamped DSHO solution with ``x(0)=x0, x'(0)=v0``."""
    w = p.dsho_frequency
    lam = p.lam
    c = x0
    s = (v0 + lam * x0) / w
    cos, sin = math.cos(w * t), math.sin(w * t)
    env = math.exp(-lam * t)
    x = env * (c * cos + s * sin)
    v = env * (-lam * (c * cos + s * sin) + w * (-c * sin + s * cos))
    return x, v


def dsho_pair_rhs(z, p: SystemParams) -> np.ndarray:
    """Bateman pair: damped SHO in ``x`` and anti-damped SHO in ``y``."""
    x, vx, y, vy = z
    _, ax = dsho_rhs((x, vx), p)
    _, ay = dsho_rhs((y, vy), p, anti=True)
    return np.array([vx, ax, vy, ay])


# --- Van der Pol family ----------------------------------------------------

def vdp_rhs(s, p: SystemParams) -> np.ndarray:
    """Plain two-dimensional VdP, ``(x, xdot)``."""
    x, v = s
    return np.array([v, -p.epsilon * (p.alpha * x * x - 1.0) * v - p.omega**2 * x])


def vdp_pair_rhs(z, p: SystemParams) -> np.ndarray:
    """VdP in ``x`` driving the auxiliary VdP in ``y``.

    The x-block never reads ``y`` or ``ydot``.
    """
    x, vx, y, vy = z
    g = p.epsilon * (p.alpha * x * x - 1.0)
    w2 = p.omega**2
    return np.array([vx, -g * vx - w2 * x, vy, g * vy - w2 * y])


def symmetric_ab_rhs(z, p: SystemParams) -> np.ndarray:
    x, vx, y, vy = z
    g = p.epsilon * (p.alpha * x * x + p.beta * y * y - 1.0)
    w2 = p.omega**2
    return np.array([vx, -g * vx - w2 * x, vy, g * vy - w2 * y])


def symmetric_ab_divergence(z, p: SystemParams) -> float:
    """Analytic divergence of :func:`symmetric_ab_rhs`.

    The bracket depends on positions only, so the only diagonal entries are
    the damping coefficients of the two blocks, which have opposite signs.
    """
    x, vx, y, vy = z
    g = p.epsilon * (p.alpha * x * x + p.beta * y * y - 1.0)
    # d(xddot)/d(xdot) + d(yddot)/d(ydot)
    return -g + g


def forced_vdp_pair_rhs(z, t: float, p: SystemParams) -> np.ndarray:
    x, vx, y, vy = z
    g = p.epsilon * (p.alpha * x * x - 1.0)
    k = p.omega**2 + p.F1 * math.cos(p.gamma * t)
    drive = p.F2 * math.cos(p.Omega_ext * t)
    return np.array([vx, -g * vx - k * x + drive, vy, g * vy - k * y + drive])


def lienard_pair_rhs(z, p: SystemParams, f: Callable[[float], float]) -> np.ndarray:
    """Lienard system ``x'' + eps f(x) x' + w^2 x = 0`` and its partner."""
    x, vx, y, vy = z
    g = p.epsilon * f(x)
    w2 = p.omega**2
    return np.array([vx, -g * vx - w2 * x, vy, g * vy - w2 * y])


def linearized_pair_rhs(z, p: SystemParams, A: float) -> np.ndarray:
    """Equivalently linearized VdP pair about a limit cycle of amplitude ``A``.

    Damping ``eps (alpha A^2/4 - 1)``; stiffness ``w^2 - eps^2 alpha A^2 / 8``
    is what the averaged quadratic Hamiltonian generates exactly (the second
    order shift is usually dropped).
    """
    x, vx, y, vy = z
    c = p.epsilon * (p.alpha * A * A / 4.0 - 1.0)
    k = p.omega**2 - p.epsilon**2 * p.alpha * A * A / 8.0
    return np.array([vx, -c * vx - k * x, vy, c * vy - k * y])
