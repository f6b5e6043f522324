"""Equilibrium states of two detectors in a common scalar-field bath.

Only the Kossakowski ratio ``Ω = Ω₋/Ω₊`` and the conserved quantity
``κ₀ = Σ_i <σ_i⊗σ_i>`` matter at equilibrium. The bath fixes ``Ω``:

* uniformly accelerated detectors (Unruh): ``Ω = tanh(ε / 2T_U)``
* static detectors, Boulware vacuum: ``Ω = 1``
* static detectors, Hartle-Hawking vacuum: ``Ω = tanh(θ)`` (or ``tanh(θ/2)``)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from relres import qmat
from relres.errors import DomainError
from relres.hawking import HawkingEnv, hawking_theta
from relres.resources import ResourceReport, XState, bures_entanglement, xstate_concurrence

KAPPA_MIN, KAPPA_MAX = -3.0, 1.0


class OmegaConvention(enum.Enum):
    TANH_THETA = "tanh"
    HALF_THETA = "half"


@dataclass(frozen=True)
class UnruhBath:
    t_unruh: float
    epsilon: float

    def omega_ratio(self) -> float:
        return omega_unruh(self.t_unruh, self.epsilon)


@dataclass(frozen=True)
class BoulwareBath:
    def omega_ratio(self) -> float:
        return omega_boulware()


@dataclass(frozen=True)
class HartleHawkingBath:
    omega: float
    t_hawking: float
    r0: float
    convention: OmegaConvention = OmegaConvention.TANH_THETA

    def omega_ratio(self) -> float:
        return omega_hh(self.omega, self.t_hawking, self.r0, self.convention)

    @property
    def rindler_valid(self) -> bool:
        return (self.r0 - 1.0) <= 1.0


@dataclass(frozen=True)
class DetectorEnv:
    bath: UnruhBath | BoulwareBath | HartleHawkingBath
    kappa0: float

    def __post_init__(self):
        _check_kappa(self.kappa0)

    def report(self) -> ResourceReport:
        return detector_resources_closed(self.bath.omega_ratio(), self.kappa0)


def _check_kappa(kappa0):
    if not KAPPA_MIN <= kappa0 <= KAPPA_MAX:
        raise DomainError(f"kappa0 must lie in [-3, 1], got {kappa0!r}")


def _check_omega(omega_ratio):
    if not 0.0 <= omega_ratio <= 1.0:
        raise DomainError(f"Omega must lie in [0, 1], got {omega_ratio!r}")


def omega_unruh(t_unruh: float, epsilon: float) -> float:
    if t_unruh <= 0.0 or epsilon <= 0.0:
        raise DomainError(f"need T_U > 0 and epsilon > 0, got T_U={t_unruh!r}, epsilon={epsilon!r}")
    return math.tanh(epsilon / (2.0 * t_unruh))


def omega_boulware() -> float:
    return 1.0


def omega_hh(omega: float, t_hawking: float, r0: float,
             conv: OmegaConvention = OmegaConvention.TANH_THETA) -> float:
    """Hartle-Hawking ratio from the geometric-optics limit.

    Two readings are offered: ``tanh(θ)`` and ``(e^θ - 1)/(e^θ + 1) = tanh(θ/2)``.
    """
    theta = hawking_theta(HawkingEnv(omega, t_hawking, r0))
    if conv is OmegaConvention.TANH_THETA:
        return math.tanh(theta)
    if conv is OmegaConvention.HALF_THETA:
        return math.tanh(0.5 * theta)
    raise ValueError(f"unknown convention {conv!r}")


def equilibrium_bloch(omega_ratio: float, kappa0: float, r=(0.0, 0.0, 1.0)):
    """Local vector ``s_j`` and correlation tensor ``s_ij`` of the equilibrium state."""
    r = np.asarray(r, dtype=float)
    d = 3.0 + omega_ratio ** 2
    s_loc = -omega_ratio * (kappa0 + 3.0) * r / d
    s_corr = (omega_ratio ** 2 * (kappa0 + 3.0) * np.outer(r, r) + (kappa0 - omega_ratio ** 2) * np.eye(3)) / d
    return s_loc, s_corr


def equilibrium_matrix(omega_ratio: float, kappa0: float, r=(0.0, 0.0, 1.0)) -> np.ndarray:
    """``¼[I⊗I + Σ s_j Π_j + Σ s_ij σ_i⊗σ_j]`` with ``Π_j = σ_j⊗I + I⊗σ_j``."""
    s_loc, s_corr = equilibrium_bloch(omega_ratio, kappa0, r)
    m = qmat.kron(qmat.I2, qmat.I2)
    for j, pj in enumerate(qmat.PAULI):
        m = m + s_loc[j] * (qmat.kron(pj, qmat.I2) + qmat.kron(qmat.I2, pj))
        for i, pi in enumerate(qmat.PAULI):
            m = m + s_corr[i, j] * qmat.kron(pi, pj)
    return 0.25 * m


def equilibrium_state(omega_ratio: float, kappa0: float) -> XState:
    """Asymptotic two-detector state for ``r = (0, 0, 1)``.

    Built from the Bloch expansion and read back as an X state; its
    populations are ``s11 = (3+κ₀)(Ω-1)²/4(3+Ω²)``, ``s44 = (3+κ₀)(Ω+1)²/4(3+Ω²)``,
    ``s22 = s33 = (3-κ₀-(κ₀+1)Ω²)/4(3+Ω²)`` and ``s23 = (κ₀-Ω²)/2(3+Ω²)``.
    """
    _check_omega(omega_ratio)
    _check_kappa(kappa0)
    return XState.from_matrix(equilibrium_matrix(omega_ratio, kappa0))


def equilibrium_coherence_closed(omega_ratio: float, kappa0: float) -> float:
    return abs((kappa0 + 3.0) / (omega_ratio ** 2 + 3.0) - 1.0)


def detector_resources_closed(omega_ratio: float, kappa0: float) -> ResourceReport:
    """Resources of the equilibrium state; coherence and discord coincide."""
    ch = equilibrium_coherence_closed(omega_ratio, kappa0)
    c = xstate_concurrence(equilibrium_state(omega_ratio, kappa0))
    return ResourceReport(coherence=ch, discord=ch, concurrence=c, bures=bures_entanglement(c))


def entanglement_threshold_kappa(omega_ratio: float) -> float:
    """Equilibrium is entangled exactly for ``κ₀ < (5Ω² - 3)/(3 - Ω²)``."""
    _check_omega(omega_ratio)
    w2 = omega_ratio ** 2
    return (5.0 * w2 - 3.0) / (3.0 - w2)


def critical_unruh_temperature(kappa0: float, epsilon: float) -> float:
    """Unruh temperature at which coherence and discord vanish (``Ω² = κ₀``).

    Only defined for ``κ₀ ∈ (0, 1)``; ``κ₀ = 1`` puts the zero at ``T_U = 0``.
    """
    if not 0.0 < kappa0 <= 1.0:
        raise DomainError(f"a coherence zero needs kappa0 in (0, 1], got {kappa0!r}")
    if kappa0 == 1.0:
        return 0.0
    return epsilon / (2.0 * math.atanh(math.sqrt(kappa0)))
