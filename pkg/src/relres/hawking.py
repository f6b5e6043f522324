"""Gisin state shared between a free-falling and a static observer.

The static observer's qubit sees the Hartle-Hawking vacuum of a massless
Dirac mode in the Boulware basis; tracing out the mode behind the horizon
is a two-branch qubit channel parameterized by the redshifted frequency
``theta = (omega / T_H) * sqrt(1 - 1/R0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from relres import qmat
from relres.errors import DomainError, NoRoot
from relres.resources import (
    ResourceReport,
    XState,
    bures_entanglement,
    xstate_concurrence,
    xstate_witness,
)

# below this Hawking temperature the channel is treated as the identity
ZERO_TEMPERATURE = 1e-9


@dataclass(frozen=True)
class GisinParams:
    alpha: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if not 0.0 <= self.phi <= math.pi / 2 + 1e-15:
            raise DomainError(f"phi must lie in [0, pi/2], got {self.phi!r}")


@dataclass(frozen=True)
class HawkingEnv:
    """Mode frequency, Hawking temperature and relative distance ``R0 = d0 / 2M``.

    Units are ``k_B = hbar = c = 1``; ``t_hawking = 1 / (8 pi M)``.
    """

    omega: float
    t_hawking: float
    r0: float

    def __post_init__(self):
        if self.omega < 0.0:
            raise DomainError(f"omega must be non-negative, got {self.omega!r}")
        if self.t_hawking < 0.0:
            raise DomainError(f"t_hawking must be non-negative, got {self.t_hawking!r}")
        if not self.r0 > 1.0:
            raise DomainError(f"r0 must exceed 1 (observer outside the horizon), got {self.r0!r}")

    @classmethod
    def from_mass(cls, omega: float, mass: float, r0: float) -> "HawkingEnv":
        if mass <= 0.0:
            raise DomainError(f"mass must be positive, got {mass!r}")
        return cls(omega, 1.0 / (8.0 * math.pi * mass), r0)

    @property
    def varpi(self) -> float:
        if self.t_hawking < ZERO_TEMPERATURE:
            return math.inf
        return self.omega / self.t_hawking

    @property
    def theta(self) -> float:
        return hawking_theta(self)

    @property
    def rindler_valid(self) -> bool:
        """Near-horizon (Rindler) approximation holds while ``R0 - 1 <= 1``."""
        return (self.r0 - 1.0) <= 1.0


def hawking_theta(env: HawkingEnv) -> float:
    """Redshift-corrected frequency parameter; ``inf`` at zero temperature."""
    if not env.r0 > 1.0:
        raise DomainError(f"r0 must exceed 1, got {env.r0!r}")
    if env.t_hawking < ZERO_TEMPERATURE:
        return math.inf
    return (env.omega / env.t_hawking) * math.sqrt(1.0 - 1.0 / env.r0)


def gisin_density(p: GisinParams) -> XState:
    a, phi = p.alpha, p.phi
    return XState(
        s11=(1.0 - a) / 2.0,
        s22=a * math.sin(phi) ** 2,
        s33=a * math.cos(phi) ** 2,
        s44=(1.0 - a) / 2.0,
        s14=0.0,
        s23=0.5 * a * math.sin(2.0 * phi),
    )


def gisin_matrix_direct(p: GisinParams) -> np.ndarray:
    """``α|φ><φ| + (1-α)/2 (|00><00| + |11><11|)`` with ``|φ> = sin φ|01> + cos φ|10>``."""
    psi = np.array([0.0, math.sin(p.phi), math.cos(p.phi), 0.0])
    mix = np.diag([1.0, 0.0, 0.0, 1.0]).astype(complex)
    return p.alpha * qmat.projector(psi) + 0.5 * (1.0 - p.alpha) * mix


def gisin_matrix_bloch(p: GisinParams) -> np.ndarray:
    """The same state assembled from its Pauli expansion.

    The ``XX + YY`` coefficient is ``+α sin 2φ``; with a minus sign the
    expansion describes ``sin φ|01> - cos φ|10>`` instead.
    """
    a, phi = p.alpha, p.phi
    i2, sx, sy, sz = qmat.I2, qmat.SX, qmat.SY, qmat.SZ
    k = qmat.kron
    m = (
        k(i2, i2)
        - a * math.cos(2 * phi) * (-k(i2, sz) + k(sz, i2))
        + a * math.sin(2 * phi) * (k(sx, sx) + k(sy, sy))
        + (1.0 - 2.0 * a) * k(sz, sz)
    )
    return 0.25 * m


def branch_weights(theta: float) -> tuple[float, float]:
    """``(c^2, s^2) = (1/(1+e^-θ), 1/(1+e^θ))``, overflow-safe, ``θ = inf`` allowed."""
    if theta < 0.0 or math.isnan(theta):
        raise DomainError(f"theta must be non-negative, got {theta!r}")
    e = math.exp(-theta)  # 0.0 for theta = inf
    return 1.0 / (1.0 + e), e / (1.0 + e)


def hawking_kraus(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Kraus pair of the static observer's qubit after tracing the interior mode.

    ``K0 = <0_II|`` keeps ``|0> -> c|0>`` and ``|1> -> |1>``; ``K1 = <1_II|``
    sends ``|0> -> s|1>``.
    """
    c2, s2 = branch_weights(theta)
    k0 = np.array([[math.sqrt(c2), 0.0], [0.0, 1.0]], dtype=complex)
    k1 = np.array([[0.0, 0.0], [math.sqrt(s2), 0.0]], dtype=complex)
    return k0, k1


def hawking_channel_accessible(rho: np.ndarray, theta: float) -> np.ndarray:
    """Apply the horizon channel to qubit 2 of a two-qubit state."""
    m = np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for k in hawking_kraus(theta):
        op = qmat.kron(qmat.I2, k)
        out += op @ m @ qmat.dagger(op)
    return 0.5 * (out + qmat.dagger(out))


def accessible_state(p: GisinParams, env_or_theta) -> XState:
    theta = env_or_theta.theta if isinstance(env_or_theta, HawkingEnv) else float(env_or_theta)
    return XState.from_matrix(hawking_channel_accessible(gisin_density(p).matrix(), theta))


def accessible_coherence_closed(alpha: float, phi: float, theta: float) -> float:
    """``|α sin 2φ| / sqrt(1 + e^-θ)``: coherence and discord of the accessible state."""
    c2, _ = branch_weights(theta)
    return abs(alpha * math.sin(2.0 * phi)) * math.sqrt(c2)


def gisin_hawking_resources(p: GisinParams, env: HawkingEnv) -> ResourceReport:
    """Resources of the accessible state for given Gisin and horizon parameters.

    Coherence and discord use the closed form; the concurrence is read from
    the channel output itself.
    """
    theta = env.theta
    ch = accessible_coherence_closed(p.alpha, p.phi, theta)
    c = xstate_concurrence(accessible_state(p, theta))
    return ResourceReport(coherence=ch, discord=ch, concurrence=c, bures=bures_entanglement(c))


def _witness(alpha, phi, theta, route):
    p = GisinParams(alpha, phi)
    if route == "xstate":
        return xstate_witness(accessible_state(p, theta))
    if route == "wootters":
        rho = hawking_channel_accessible(gisin_matrix_direct(p), theta)
        return qmat.wootters_witness(rho)
    raise ValueError(f"unknown route {route!r}")


def entanglement_threshold_alpha(phi: float, theta: float, tol: float = 1e-10, route: str = "xstate") -> float:
    """Smallest Gisin weight ``α`` at which the accessible state is entangled.

    Bisection on the unclamped concurrence witness over ``α ∈ [0, 1]``,
    evaluated either from the X-state formula (``route="xstate"``) or from
    Wootters' formula on the full matrix (``route="wootters"``).

    Raises:
        NoRoot: the witness has the same sign at both ends of [0, 1].
    """
    if not 0.0 < phi < math.pi / 2:
        raise DomainError(f"phi must lie in (0, pi/2), got {phi!r}")
    lo, hi = 0.0, 1.0
    f_lo = _witness(lo, phi, theta, route)
    f_hi = _witness(hi, phi, theta, route)
    if f_lo > 0.0 or f_hi <= 0.0:
        raise NoRoot(f"no entanglement onset in alpha for phi={phi!r}, theta={theta!r}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _witness(mid, phi, theta, route) > 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
