"""Coherence, discord and entanglement of two-qubit X states.

The closed forms work on :class:`XState` (populations plus the two real
anti-diagonal coherences). Each has an independent route on a general
density matrix: entrywise Hellinger algebra for the coherence, Wootters'
formula for the concurrence, and a multi-start simplex search over
classical-quantum states for the trace-distance discord.
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass

import numpy as np

from relres import qmat
from relres.errors import DomainError
from relres.neldermead import nelder_mead_batch

XSTATE_TOL = 1e-12
_BURES_NORM = 1.0 / math.sqrt(2.0 - math.sqrt(2.0))


@dataclass(frozen=True)
class XState:
    """Two-qubit X state in the computational basis ``|00>,|01>,|10>,|11>``.

    Only the diagonal and the real anti-diagonal entries ``s14``, ``s23``
    may be non-zero.
    """

    s11: float
    s22: float
    s33: float
    s44: float
    s14: float = 0.0
    s23: float = 0.0

    def __post_init__(self):
        for name in ("s11", "s22", "s33", "s44", "s14", "s23"):
            v = getattr(self, name)
            if isinstance(v, complex):
                raise DomainError(f"{name} must be real, got {v!r}")
            object.__setattr__(self, name, float(v))
        total = self.s11 + self.s22 + self.s33 + self.s44
        if abs(total - 1.0) > XSTATE_TOL:
            raise DomainError(f"populations sum to {total!r}, not 1")
        for name in ("s11", "s22", "s33", "s44"):
            if getattr(self, name) < -XSTATE_TOL:
                raise DomainError(f"population {name}={getattr(self, name)!r} is negative")
        if self.s14 ** 2 > self.s11 * self.s44 + XSTATE_TOL:
            raise DomainError("s14^2 exceeds s11*s44: not positive semidefinite")
        if self.s23 ** 2 > self.s22 * self.s33 + XSTATE_TOL:
            raise DomainError("s23^2 exceeds s22*s33: not positive semidefinite")

    def matrix(self) -> np.ndarray:
        m = np.diag([self.s11, self.s22, self.s33, self.s44]).astype(complex)
        m[0, 3] = m[3, 0] = self.s14
        m[1, 2] = m[2, 1] = self.s23
        return m

    @classmethod
    def from_matrix(cls, rho: np.ndarray, atol: float = 1e-10) -> "XState":
        """Read an X state off a 4x4 matrix.

        Raises:
            DomainError: if entries outside the X pattern exceed ``atol`` or
                an anti-diagonal coherence has an imaginary part.
        """
        m = np.asarray(rho, dtype=complex)
        if m.shape != (4, 4):
            raise DomainError(f"expected a 4x4 matrix, got {m.shape}")
        mask = np.ones((4, 4), dtype=bool)
        mask[np.diag_indices(4)] = False
        for i, j in ((0, 3), (3, 0), (1, 2), (2, 1)):
            mask[i, j] = False
        stray = np.max(np.abs(m[mask]))
        if stray > atol:
            raise DomainError(f"matrix is not an X state (stray entry {stray:.2e})")
        if abs(m[0, 3].imag) > atol or abs(m[1, 2].imag) > atol:
            raise DomainError("X-state coherences must be real")
        d = np.real(np.diag(m))
        return cls(d[0], d[1], d[2], d[3], m[0, 3].real, m[1, 2].real)


@dataclass(frozen=True)
class ResourceReport:
    """Hellinger coherence, trace-distance discord, concurrence and Bures entanglement."""

    coherence: float
    discord: float
    concurrence: float
    bures: float

    def as_tuple(self):
        return astuple(self)


def random_xstate(rng: np.random.Generator) -> XState:
    """Uniform populations on the simplex, coherences uniform within the PSD bound."""
    p = rng.dirichlet(np.ones(4))
    p = p / p.sum()
    u, v = rng.uniform(-1.0, 1.0, size=2)
    s14 = u * math.sqrt(p[0] * p[3])
    s23 = v * math.sqrt(p[1] * p[2])
    # absorb summation round-off so the invariant check is exact enough
    s44 = 1.0 - p[0] - p[1] - p[2]
    return XState(p[0], p[1], p[2], s44, s14, s23)


def l1_coherence(rho: np.ndarray) -> float:
    """Sum of the moduli of the off-diagonal entries."""
    m = np.asarray(rho, dtype=complex)
    return float(np.sum(np.abs(m)) - np.sum(np.abs(np.diag(m))))


def hellinger_coherence_oracle(rho: np.ndarray) -> float:
    """``Tr[(√ρ - √ρ_p)^2]`` with the entrywise, phase-keeping square root.

    ``ρ_p`` is the diagonal part of ``ρ``. Evaluated literally as a matrix
    product and trace so that it checks :func:`l1_coherence` by a different
    route.
    """
    m = np.asarray(rho, dtype=complex)
    root = np.sqrt(np.abs(m)) * np.exp(1j * np.angle(m))
    root_p = np.diag(np.sqrt(np.abs(np.diag(m))))
    d = root - root_p
    return float(np.trace(d @ d).real)


def xstate_witness(x: XState) -> float:
    """``2 max(λ1, λ2)`` before clamping at zero; positive iff entangled."""
    lam1 = abs(x.s14) - math.sqrt(max(x.s22 * x.s33, 0.0))
    lam2 = abs(x.s23) - math.sqrt(max(x.s11 * x.s44, 0.0))
    return 2.0 * max(lam1, lam2)


def xstate_concurrence(x: XState) -> float:
    return min(1.0, max(0.0, xstate_witness(x)))


def bures_entanglement(c: float) -> float:
    """Normalized Bures-distance entanglement as a function of concurrence.

    Raises:
        DomainError: if ``c`` lies outside [0, 1] by more than 1e-12.
    """
    if not (-1e-12 <= c <= 1.0 + 1e-12) or math.isnan(c):
        raise DomainError(f"concurrence {c!r} outside [0, 1]")
    c = min(1.0, max(0.0, c))
    inner = 2.0 + 2.0 * math.sqrt(1.0 - c * c)
    return _BURES_NORM * math.sqrt(max(0.0, 2.0 - math.sqrt(inner)))


def discord_upsilons(x: XState) -> dict:
    """Intermediate quantities of the X-state trace-distance discord."""
    y1 = 2.0 * (abs(x.s23) + abs(x.s14))
    y2 = 2.0 * (abs(x.s23) - abs(x.s14))
    y3 = 1.0 - 2.0 * (x.s22 + x.s33)
    y30 = 2.0 * (abs(x.s11) + abs(x.s22)) - 1.0
    # defined alongside the others but never enters the formula
    y03 = 2.0 * (abs(x.s11) + abs(x.s44)) - 1.0
    return {
        "y1": y1,
        "y2": y2,
        "y3": y3,
        "y30": y30,
        "y03": y03,
        "min2": min(y1 * y1, y3 * y3),
        "max2": max(y3 * y3, y2 * y2 + y30 * y30),
    }


def trace_distance_discord_closed(x: XState) -> float:
    """Trace-distance discord of an X state, measured on the first qubit.

    When numerator and denominator both vanish (``|s14||s23| = 0`` together
    with ``Υ_max = Υ_min``) the algebraic limit ``|Υ1|`` is returned.
    """
    u = discord_upsilons(x)
    y1s = u["y1"] ** 2
    # num/den rewritten as a weighted mean of min2 and y1^2; the textbook
    # form cancels badly once max2 and min2 nearly coincide
    gap = u["max2"] - u["min2"]
    cross = 16.0 * abs(x.s14) * abs(x.s23)  # y1^2 - y2^2
    den = gap + cross
    if den <= 0.0:
        # both weights vanish only when min2 = max2 = y1^2
        return abs(u["y1"])
    num = cross * u["min2"] + y1s * gap
    return math.sqrt(max(0.0, num / den))


def _bloch_ops(v):
    # (..., 3) Bloch vectors -> (..., 2, 2) operators (I + v.σ) / 2
    v = np.asarray(v)
    out = np.empty(v.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = 0.5 * (1.0 + v[..., 2])
    out[..., 1, 1] = 0.5 * (1.0 - v[..., 2])
    out[..., 0, 1] = 0.5 * (v[..., 0] - 1j * v[..., 1])
    out[..., 1, 0] = 0.5 * (v[..., 0] + 1j * v[..., 1])
    return out


def _ball(u):
    r = np.linalg.norm(u, axis=-1, keepdims=True)
    return u / np.maximum(1.0, r)


def classical_quantum_states(params: np.ndarray) -> np.ndarray:
    """Map ``(m, 9)`` unconstrained parameters to ``(m, 4, 4)`` classical-quantum states.

    Layout: polar and azimuthal angle of the qubit-1 measurement axis, a
    phase whose ``sin^2`` is the weight ``p``, then two qubit-2 Bloch vectors
    (radially clipped into the unit ball).
    """
    params = np.atleast_2d(params)
    th, ph = params[:, 0], params[:, 1]
    n = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)
    p = np.sin(params[:, 2]) ** 2
    b1 = _ball(params[:, 3:6])
    b2 = _ball(params[:, 6:9])
    proj_up = _bloch_ops(n)
    proj_dn = _bloch_ops(-n)
    r1 = _bloch_ops(b1)
    r2 = _bloch_ops(b2)
    k1 = np.einsum("mij,mkl->mikjl", proj_up, r1).reshape(-1, 4, 4)
    k2 = np.einsum("mij,mkl->mikjl", proj_dn, r2).reshape(-1, 4, 4)
    return p[:, None, None] * k1 + (1.0 - p)[:, None, None] * k2


def _discord_objective(rho):
    def f(params):
        diff = rho[None, :, :] - classical_quantum_states(params)
        # batched LAPACK here; the objective is evaluated millions of times
        w = np.linalg.eigvalsh(diff)
        return np.sum(np.abs(w), axis=-1)

    return f


def trace_distance_discord_oracle(rho, restarts: int = 32, tol: float = 1e-6, rng=None) -> float:
    """Upper bound on the trace-distance discord by direct minimization.

    Minimizes ``‖ρ - Σ‖₁`` over classical-quantum states
    ``Σ = p P₊⊗ρ₁ + (1-p) P₋⊗ρ₂`` from ``restarts`` random starting points,
    followed by two polishing rounds restarted from each simplex's best
    vertex. Any feasible ``Σ`` bounds the true minimum from above, so the
    result never undershoots the exact discord beyond round-off.

    The norm carries no factor ½ so that the value is on the same scale as
    :func:`trace_distance_discord_closed` (1 for a Bell state).

    Args:
        rho: 4x4 density matrix.
        restarts: number of independent simplex starts (>= 1).
        tol: simplex convergence tolerance on values and vertices.
        rng: ``numpy.random.Generator`` or seed; the caller owns it.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    m = qmat.check_density(rho)
    rng = np.random.default_rng(rng)
    f = _discord_objective(m)

    x0 = np.column_stack([
        rng.uniform(0.0, math.pi, restarts),
        rng.uniform(0.0, 2.0 * math.pi, restarts),
        rng.uniform(0.0, math.pi, restarts),
        rng.uniform(-1.0, 1.0, (restarts, 6)),
    ])
    x, fx = nelder_mead_batch(f, x0, step=0.6, max_iter=400, xtol=tol, ftol=tol)
    for step in (0.1, 0.01):
        x, fx = nelder_mead_batch(f, x, step=step, max_iter=150, xtol=tol, ftol=tol)
    return float(np.min(fx))


def resource_report(x: XState) -> ResourceReport:
    """All four quantifiers of an X state from their closed forms."""
    c = xstate_concurrence(x)
    return ResourceReport(
        coherence=2.0 * (abs(x.s14) + abs(x.s23)),
        discord=trace_distance_discord_closed(x),
        concurrence=c,
        bures=bures_entanglement(c),
    )
