"""Hamiltonians for dissipative oscillators through an auxiliary partner variable."""

from .analysis import (
    FloquetReport,
    LimitCycleError,
    LimitCycleReport,
    auxiliary_growth_check,
    measure_limit_cycle,
    monodromy,
)
from .hamiltonians import (
    KINDS,
    AveragedQuadratic,
    BatemanDual,
    CaldirolaKanai,
    ForcedVdp,
    GaugeSplit,
    Hamiltonian,
    LienardSwapped,
    LienardGeneral,
    VdpFull,
    VdpSimple,
    energy_drift,
    equivalent_damping,
    power_balance_residual,
    verify_reduction,
)
from .integrate import EventSpec, IntegrationError, IntegratorConfig, find_events, integrate
from .models import OverdampedError, SystemParams, Trajectory
from .trigpoly import Amplitude, TrigPolynomial

__version__ = "0.1.0"
