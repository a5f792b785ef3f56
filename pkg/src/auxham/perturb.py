"""
Canonical perturbation theory for the VdP oscillator in its doubled
Hamiltonian form

    H = p_x p_y + w^2 x y + eps (x^2 - 1) y p_y.

The rotation ``X = (x + y)/sqrt2, Y = (x - y)/sqrt2`` (with the matching
momenta) separates the unperturbed part into two oscillators of opposite
sign,

    H = (P_X^2 + w^2 X^2)/2 - (P_Y^2 + w^2 Y^2)/2
        + eps (P_X - P_Y)(X - Y)/2 [ (X + Y)^2/2 - 1 ],

and the unperturbed action-angle variables are

    X = sqrt(2 I1/w) sin phi1,  P_X = sqrt(2 w I1) cos phi1   (same for Y, I2, phi2).

``K = w I1 - w I2 + eps K1``. The first-order generating function has
Fourier amplitudes ``S1_m = -j K1_m / (w (m1 - m2))``; modes with ``m1 == m2``
are resonant and cannot be absorbed. They are handled by starting on the
auxiliary fixed point ``y = ydot = 0`` (so ``sqrt(I1) = -sqrt(I2)`` and
``phi1 + phi2 = 0``) with the action corrected to first order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .integrate import IntegratorConfig, integrate
from .models import PhaseState4, SystemParams, Trajectory, vdp_pair_rhs
from .trigpoly import Amplitude, TrigPolynomial

SQRT2 = math.sqrt(2.0)

# modes where K1 is nonzero; complete list for the VdP perturbation
K1_SUPPORT = frozenset({
    (2, 0), (-2, 0), (4, 0), (-4, 0), (1, -3), (-1, 3), (-2, -2),
    (1, -1), (-1, -1), (1, 1), (-1, 1), (3, -1), (-3, 1),
    (0, 2), (0, -2), (0, 4), (0, -4), (2, 2),
})


@dataclass(frozen=True)
class ActionAngle:
    """Unperturbed action-angle variables.

    ``branch2`` fixes the sign of ``sqrt(I2)``: ``Y = branch2 sqrt(2 I2/w) sin phi2``.
    """

    phi1: float
    phi2: float
    I1: float
    I2: float
    branch2: int = -1

    def __post_init__(self):
        if self.I1 < 0 or self.I2 < 0:
            raise ValueError("actions must be non-negative")
        if self.branch2 not in (1, -1):
            raise ValueError("branch2 must be +1 or -1")

    @property
    def sqrt_I1(self) -> float:
        return math.sqrt(self.I1)

    @property
    def sqrt_I2(self) -> float:
        """Signed square root of ``I2``."""
        return self.branch2 * math.sqrt(self.I2)

    def reduced(self) -> "ActionAngle":
        two_pi = 2 * math.pi
        return ActionAngle(self.phi1 % two_pi, self.phi2 % two_pi, self.I1, self.I2, self.branch2)


# --- coordinates -------------------------------------------------------------

def rotate(s: PhaseState4) -> tuple[float, float, float, float]:
    """``(x, y, p_x, p_y) -> (X, Y, P_X, P_Y)``."""
    x, y, px, py = s
    return (x + y) / SQRT2, (x - y) / SQRT2, (px + py) / SQRT2, (px - py) / SQRT2


def unrotate(X, Y, PX, PY) -> PhaseState4:
    return PhaseState4((X + Y) / SQRT2, (X - Y) / SQRT2, (PX + PY) / SQRT2, (PX - PY) / SQRT2)


def _angle_action(q, p, w, sign):
    action = (p * p + w * w * q * q) / (2 * w)
    if action == 0.0:
        return 0.0, 0.0
    return math.atan2(sign * w * q, sign * p), action


def to_action_angle(s: PhaseState4, p: SystemParams, branch2: int = -1) -> ActionAngle:
    """Unperturbed action-angle variables of a VdP phase state.

    Momenta follow the simple Hamiltonian: ``p_y = xdot``, ``p_x = ydot - eps f(x) y``.
    A zero action gets angle 0.
    """
    X, Y, PX, PY = rotate(s)
    w = p.omega
    phi1, I1 = _angle_action(X, PX, w, 1)
    phi2, I2 = _angle_action(Y, PY, w, branch2)
    return ActionAngle(phi1, phi2, I1, I2, branch2)


def from_action_angle(aa: ActionAngle, p: SystemParams) -> PhaseState4:
    w = p.omega
    r1, r2 = aa.sqrt_I1, aa.sqrt_I2
    X = math.sqrt(2 / w) * r1 * math.sin(aa.phi1)
    PX = math.sqrt(2 * w) * r1 * math.cos(aa.phi1)
    Y = math.sqrt(2 / w) * r2 * math.sin(aa.phi2)
    PY = math.sqrt(2 * w) * r2 * math.cos(aa.phi2)
    return unrotate(X, Y, PX, PY)


def state_from_velocities(z, p: SystemParams) -> PhaseState4:
    """``(x, xdot, y, ydot) -> (x, y, p_x, p_y)`` for the simple VdP Hamiltonian."""
    x, vx, y, vy = z
    return PhaseState4(x, y, vy - p.epsilon * (p.alpha * x * x - 1) * y, vx)


# --- K1 and S1 -----------------------------------------------------------------

@lru_cache(maxsize=None)
def k1_modes() -> TrigPolynomial:
    """Exact Fourier expansion of the perturbation ``K1`` in the unperturbed angles.

    Built by multiplying out ``(P_X - P_Y)(X - Y)/2 [(X + Y)^2/2 - 1]`` with the
    action-angle substitution; coefficients are symbolic in ``I1, I2, w``.
    """
    X = TrigPolynomial.sin(1, Amplitude.monomial(1, s2=1, a=1, c=-1))
    PX = TrigPolynomial.cos(1, Amplitude.monomial(1, s2=1, a=1, c=1))
    Y = TrigPolynomial.sin(2, Amplitude.monomial(1, s2=1, b=1, c=-1))
    PY = TrigPolynomial.cos(2, Amplitude.monomial(1, s2=1, b=1, c=1))
    half = Fraction(1, 2)
    bracket = (X + Y) * (X + Y) * half - Amplitude.monomial(1)
    return (PX - PY) * (X - Y) * bracket * half


def k1_value(phi1, phi2, I1, I2, omega, branch2=1):
    """Direct evaluation of ``K1`` from the coordinates (independent of the expansion)."""
    r1, r2 = np.sqrt(I1), branch2 * np.sqrt(I2)
    X = np.sqrt(2 / omega) * r1 * np.sin(phi1)
    PX = np.sqrt(2 * omega) * r1 * np.cos(phi1)
    Y = np.sqrt(2 / omega) * r2 * np.sin(phi2)
    PY = np.sqrt(2 * omega) * r2 * np.cos(phi2)
    return (PX - PY) * (X - Y) / 2 * ((X + Y) ** 2 / 2 - 1)


def is_resonant(m) -> bool:
    return m[0] == m[1]


@dataclass(frozen=True)
class FirstOrder:
    """Periodic generating function and the modes it cannot absorb."""

    S1: TrigPolynomial
    resonant: TrigPolynomial


def s1_build(modes: TrigPolynomial | None = None) -> FirstOrder:
    """``S1_m = -j K1_m / (w (m1 - m2))`` for every mode with ``m1 != m2``."""
    modes = k1_modes() if modes is None else modes
    periodic = modes.select(lambda m: not is_resonant(m))
    S1 = periodic.map(
        lambda m, a: (a.times_j(-1) * Fraction(1, m[0] - m[1])).scale_omega(-2))
    # the mean of K1 would be absorbed into E1; it is zero here but keep it out of S1
    resonant = modes.select(lambda m: is_resonant(m) and m != (0, 0))
    return FirstOrder(S1=S1, resonant=resonant)


def homological_residual(first: FirstOrder, modes: TrigPolynomial | None = None) -> TrigPolynomial:
    """``w (dS1/dphi1 - dS1/dphi2) + K1`` as an exact series (the residual ``R1``)."""
    modes = k1_modes() if modes is None else modes
    dS = first.S1.d_dphi(1) - first.S1.d_dphi(2)
    return dS.map(lambda m, a: a.scale_omega(2)) + modes


def r1_value(phi1, phi2, I1, I2, omega, branch2=-1):
    """Closed form of the first-order residual:

        -sqrt(I1 I2)/(4w) sin(phi1 + phi2) [I1 + I2 - 4w - 2 sqrt(I1 I2) cos(phi1 + phi2)]

    with ``sqrt(I1 I2) = sqrt(I1) * branch2 * sqrt(I2)``.
    """
    r = np.sqrt(I1) * branch2 * np.sqrt(I2)
    psi = np.asarray(phi1) + np.asarray(phi2)
    return -r / (4 * omega) * np.sin(psi) * (I1 + I2 - 4 * omega - 2 * r * np.cos(psi))


def secular_slope(phi1, phi2, I1, I2, omega, branch2=-1):
    """Coefficient of ``phi1`` in the non-periodic part of ``dS1/dphi_i``.

        sqrt(I1 I2)/(4 w^2) [(I1 + I2 - 4w) cos(phi1 + phi2) - 2 sqrt(I1 I2) cos 2(phi1 + phi2)]
    """
    r = np.sqrt(I1) * branch2 * np.sqrt(I2)
    psi = np.asarray(phi1) + np.asarray(phi2)
    return r / (4 * omega**2) * ((I1 + I2 - 4 * omega) * np.cos(psi) - 2 * r * np.cos(2 * psi))


def nonperiodic_conditions(aa: ActionAngle, p: SystemParams) -> tuple[float, float]:
    """Residuals of ``(sqrt(I1) - sqrt(I2))^2 - 4w`` and ``phi1 + phi2``.

    Both vanish when the secular terms of ``S1`` do. Square roots are signed
    by ``aa.branch2``.
    """
    return (aa.sqrt_I1 - aa.sqrt_I2) ** 2 - 4 * p.omega, aa.phi1 + aa.phi2


# --- special initial data ------------------------------------------------------

def initial_action(phi10: float, p: SystemParams) -> float:
    """``I(0) = w + eps (2 sin 2phi + sin 4phi) / 4``."""
    return p.omega + p.epsilon * (2 * math.sin(2 * phi10) + math.sin(4 * phi10)) / 4


def special_initial_state(phi10: float, p: SystemParams) -> tuple[float, float, float, float]:
    """``(x0, xdot0, 0, 0)`` with ``I1(0) = I2(0)`` corrected to keep ``I1 = I2 = w + O(eps^2)``."""
    I0 = initial_action(phi10, p)
    w = p.omega
    return (2 * math.sqrt(I0 / w) * math.sin(phi10),
            2 * math.sqrt(w * I0) * math.cos(phi10), 0.0, 0.0)


def initial_condition_residuals(z, p: SystemParams) -> tuple[float, float]:
    """The two bilinear initial conditions in ``(x, xdot, y, ydot)``.

    The first is proportional to ``sin(phi1 + phi2)``, the second equals
    ``w (I1 - I2)``.
    """
    x, vx, y, vy = z
    g = p.epsilon * (x * x - 1)
    return (vy * x - y * (vx + g * x),
            vy * vx + y * (p.omega**2 * x - g * vx))


# --- second order ---------------------------------------------------------------

def _mono(num, den, a, b, c):
    return Amplitude.monomial(Fraction(num, den), a=a, b=b, c=c)


@lru_cache(maxsize=None)
def e_r2_series() -> Amplitude:
    """Second-order energy including the residual correction, as exact monomials.

    Exponents count half powers: ``a`` of ``I1``, ``b`` of ``I2``, ``c`` of ``w``.
    """
    terms = [
        (11, 64, 5, 1, -6), (-3, 8, 3, 1, -4), (-11, 256, 6, 0, -6),
        (-55, 256, 4, 2, -6), (3, 16, 4, 0, -4), (-11, 64, 1, 5, -6),
        (3, 8, 1, 3, -4), (55, 256, 2, 4, -6), (-1, 8, 2, 0, -2),
        (11, 256, 0, 6, -6), (-3, 16, 0, 4, -4), (1, 8, 0, 2, -2),
    ]
    total = Amplitude()
    for t in terms:
        total = total + _mono(*t)
    return total


def e_r2(I1: float, I2: float, branch2: int, p: SystemParams) -> float:
    """Second-order energy ``E_R2``; half-integer powers of ``I2`` use the signed root."""
    return e_r2_series().evaluate(I1, I2, p.omega, branch2).real


def e_r2_dI1(I1: float, I2: float, branch2: int, p: SystemParams) -> float:
    return e_r2_series().d_dI(1).evaluate(I1, I2, p.omega, branch2).real


def predict_frequency(p: SystemParams) -> float:
    """``dE0/dI1 + eps^2 dE_R2/dI1`` at ``I1 = I2 = w`` on the negative branch.

    The first-order residual contributes nothing there.
    """
    w = p.omega
    return w + p.epsilon**2 * e_r2_dI1(w, w, -1, p)


def predict_frequency_closed(p: SystemParams) -> float:
    return p.omega - p.epsilon**2 / (16 * p.omega)


def predict_waveform(t, phi10: float, p: SystemParams):
    """``x = 2 sin phi - eps/(4w) cos 3 phi`` with ``phi = Omega t + phi10``."""
    phi = predict_frequency(p) * np.asarray(t) + phi10
    return 2 * np.sin(phi) - p.epsilon / (4 * p.omega) * np.cos(3 * phi)


def naive_second_order_energy(first: FirstOrder | None = None) -> Amplitude:
    """``< sum_i dK1/dI_i dS1/dphi_i >`` from the periodic ``S1`` alone.

    This omits the residual correction that ``E_R2`` contains; it is exposed
    for comparison only.
    """
    first = s1_build() if first is None else first
    K = k1_modes()
    prod = K.d_dI(1) * first.S1.d_dphi(1) + K.d_dI(2) * first.S1.d_dphi(2)
    return prod.mean()


# --- action relations along the flow --------------------------------------------

def corrected_action(I1_0, phi1_0, p: SystemParams, iterations: int = 4):
    """Solve ``I1 = I1_0 - eps (2 I1 w sin 2phi + I1^2 sin 4phi) / (4 w^2)`` by fixed point."""
    w, e = p.omega, p.epsilon
    I1 = np.array(I1_0, dtype=float)
    for _ in range(iterations):
        I1 = I1_0 - e * (2 * I1 * w * np.sin(2 * phi1_0) + I1**2 * np.sin(4 * phi1_0)) / (4 * w * w)
    return I1


def corrected_angle(I1, phi1_0, p: SystemParams):
    w = p.omega
    return phi1_0 - p.epsilon * ((2 * w - 4 * I1) * np.cos(2 * phi1_0)
                                 + I1 * np.cos(4 * phi1_0)) / (8 * w * w)


def unwrap_nearest(angles) -> np.ndarray:
    """Continuous angle history: each sample moved by 2 pi k to its predecessor."""
    return np.unwrap(np.asarray(angles, dtype=float))


@dataclass
class ActionRelations:
    times: np.ndarray
    I1_0: np.ndarray
    phi1_0: np.ndarray
    I1: np.ndarray
    max_residual: float  # max |I1 - w|


def special_trajectory(phi10: float, p: SystemParams, n_periods: int = 10,
                       cfg: IntegratorConfig | None = None) -> Trajectory:
    T = 2 * math.pi / p.omega
    return integrate(lambda t, z: vdp_pair_rhs(z, p), special_initial_state(phi10, p),
                     (0.0, n_periods * T), cfg)


def action_relations_check(traj: Trajectory, p: SystemParams,
                           samples: int = 4001) -> ActionRelations:
    """Track the unperturbed action along a flow and apply the first-order correction.

    ``traj`` holds ``(x, xdot, y, ydot)`` states of the VdP pair.
    """
    ts = np.linspace(traj.times[0], traj.times[-1], samples)
    states = traj(ts)
    aas = [to_action_angle(state_from_velocities(z, p), p, branch2=-1) for z in states]
    I1_0 = np.array([a.I1 for a in aas])
    phi1_0 = unwrap_nearest([a.phi1 for a in aas])
    I1 = corrected_action(I1_0, phi1_0, p)
    return ActionRelations(times=ts, I1_0=I1_0, phi1_0=phi1_0, I1=I1,
                           max_residual=float(np.max(np.abs(I1 - p.omega))))
