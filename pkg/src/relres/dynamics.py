"""Kossakowski-Lindblad evolution of two detectors in a common bath.

The generator is

    dρ/dt = -i[H, ρ] + Σ_{ij} Σ_{kl} (X_ij/2) (2 σ_j^(k) ρ σ_i^(l) - {σ_i^(k) σ_j^(l), ρ})

with ``X_ij = Ω₊δ_ij - iΩ₋ε_ijk r_k + Ω₀ r_i r_j`` and ``H = (ε/2) Σ_j r_j Π_j``.
The Lamb shift is left out, so ``ε`` is the bare level spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from relres import qmat
from relres.errors import DomainError, NotConverged

_LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _LEVI_CIVITA[_i, _j, _k] = 1.0
    _LEVI_CIVITA[_j, _i, _k] = -1.0

# single-detector Pauli operators embedded in the pair: _TAU[i][k] is σ_i on detector k
_TAU = [[qmat.kron(p, qmat.I2), qmat.kron(qmat.I2, p)] for p in qmat.PAULI]
_SIGMA_SIGMA = [qmat.kron(p, p) for p in qmat.PAULI]

SINGLET = qmat.projector(np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0))


@dataclass(frozen=True)
class KossakowskiSpec:
    gamma_plus: float
    gamma_minus: float
    gamma_zero: float = 0.0
    r: tuple = (0.0, 0.0, 1.0)

    def __post_init__(self):
        if self.gamma_plus < 0.0:
            raise DomainError(f"gamma_plus must be non-negative, got {self.gamma_plus!r}")
        if abs(self.gamma_minus) > self.gamma_plus:
            raise DomainError("|gamma_minus| must not exceed gamma_plus")
        r = tuple(float(v) for v in self.r)
        if len(r) != 3 or abs(math.sqrt(sum(v * v for v in r)) - 1.0) > 1e-12:
            raise DomainError(f"r must be a unit 3-vector, got {self.r!r}")
        object.__setattr__(self, "r", r)

    @property
    def omega_ratio(self) -> float:
        return self.gamma_minus / self.gamma_plus if self.gamma_plus else 0.0


@dataclass(frozen=True)
class EvolutionConfig:
    """Fixed-step RK4 settings; ``dt=None`` picks the stability bound ``0.01/(6 Ω₊)``."""

    dt: float | None = None
    max_time: float = 100.0
    convergence_tol: float = 1e-10
    sample_every: int | None = None


@dataclass
class EvolutionResult:
    rho: np.ndarray
    times: list = field(default_factory=list)
    states: list = field(default_factory=list)
    converged: bool = False
    t_final: float = 0.0
    rhs_norm: float = math.nan


def kossakowski_matrix(spec: KossakowskiSpec) -> np.ndarray:
    r = np.asarray(spec.r)
    return (
        spec.gamma_plus * np.eye(3)
        - 1j * spec.gamma_minus * np.einsum("ijk,k->ij", _LEVI_CIVITA, r)
        + spec.gamma_zero * np.outer(r, r)
    )


def effective_hamiltonian(spec: KossakowskiSpec, epsilon: float) -> np.ndarray:
    h = np.zeros((4, 4), dtype=complex)
    for j in range(3):
        h += spec.r[j] * (_TAU[j][0] + _TAU[j][1])
    return 0.5 * epsilon * h


def lindblad_rhs(rho: np.ndarray, spec: KossakowskiSpec, epsilon: float) -> np.ndarray:
    """Time derivative of the two-detector state, summed term by term."""
    m = np.asarray(rho, dtype=complex)
    x = kossakowski_matrix(spec)
    h = effective_hamiltonian(spec, epsilon)
    out = -1j * (h @ m - m @ h)
    for i in range(3):
        for j in range(3):
            if x[i, j] == 0:
                continue
            acc = np.zeros((4, 4), dtype=complex)
            for k in range(2):
                for l in range(2):
                    a, b = _TAU[j][k], _TAU[i][l]
                    prod = _TAU[i][k] @ _TAU[j][l]
                    acc += 2.0 * a @ m @ b - (prod @ m + m @ prod)
            out += 0.5 * x[i, j] * acc
    return out


def superoperator(spec: KossakowskiSpec, epsilon: float) -> np.ndarray:
    """16x16 matrix of :func:`lindblad_rhs` acting on row-major ``vec(ρ)``."""
    big = np.zeros((16, 16), dtype=complex)
    for n in range(16):
        e = np.zeros(16, dtype=complex)
        e[n] = 1.0
        big[:, n] = lindblad_rhs(e.reshape(4, 4), spec, epsilon).reshape(16)
    return big


def kappa0_of(rho: np.ndarray) -> float:
    """``Σ_i Tr[ρ σ_i⊗σ_i]``, conserved by the common-bath dynamics."""
    m = np.asarray(rho, dtype=complex)
    return float(sum(np.trace(m @ s).real for s in _SIGMA_SIGMA))


def with_kappa0(rho: np.ndarray, kappa0: float) -> np.ndarray:
    """Convex mixture of ``rho`` that has the requested ``κ₀``.

    Lowers ``κ₀`` by mixing in the singlet (``κ₀ = -3``) and raises it by
    mixing in the triplet-projected part of ``rho`` (``κ₀ = 1``).
    """
    if not -3.0 <= kappa0 <= 1.0:
        raise DomainError(f"kappa0 must lie in [-3, 1], got {kappa0!r}")
    m = np.asarray(rho, dtype=complex)
    k = kappa0_of(m)
    if kappa0 <= k:
        p = (kappa0 + 3.0) / (k + 3.0)
        return p * m + (1.0 - p) * SINGLET
    proj = np.eye(4) - SINGLET
    trip = proj @ m @ proj
    tr = np.trace(trip).real
    trip = trip / tr if tr > 1e-12 else proj / 3.0
    p = (1.0 - kappa0) / (1.0 - k)
    return p * m + (1.0 - p) * trip


def kms_omega(beta: float, epsilon: float) -> float:
    """Kossakowski ratio implied by detailed balance ``Ξ(ε) = e^{βε} Ξ(-ε)``."""
    e = math.exp(-beta * epsilon)
    return (1.0 - e) / (1.0 + e)


def hermitian_components(rho: np.ndarray) -> list[float]:
    """16 real numbers: the diagonal, then Re/Im of each upper off-diagonal entry."""
    m = np.asarray(rho, dtype=complex)
    out = [m[i, i].real for i in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            out.extend((m[i, j].real, m[i, j].imag))
    return out


def component_names() -> list[str]:
    names = [f"re_{i}{i}" for i in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            names.extend((f"re_{i}{j}", f"im_{i}{j}"))
    return names


def _clean(m):
    m = 0.5 * (m + qmat.dagger(m))
    return m / np.trace(m).real


def evolve(rho0, spec: KossakowskiSpec, epsilon: float, cfg: EvolutionConfig = EvolutionConfig(),
           raise_on_timeout: bool = True) -> EvolutionResult:
    """Integrate to equilibrium with classical RK4.

    After each step the state is re-symmetrized and its trace reset to 1.
    Integration stops once ``‖dρ/dt‖_F`` drops below ``cfg.convergence_tol``.

    Raises:
        NotConverged: ``cfg.max_time`` was reached first and
            ``raise_on_timeout`` is set; the partial result rides on the
            exception.
    """
    bound = 0.01 / (6.0 * spec.gamma_plus) if spec.gamma_plus > 0 else math.inf
    dt = bound if cfg.dt is None else cfg.dt
    if not dt > 0.0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    if dt > bound * (1.0 + 1e-12):
        raise DomainError(f"dt={dt!r} exceeds the RK4 bound 0.01/(6*gamma_plus)={bound!r}")
    every = cfg.sample_every or max(1, math.ceil(0.1 / dt))

    big = superoperator(spec, epsilon)
    v = _clean(np.asarray(rho0, dtype=complex)).reshape(16)
    res = EvolutionResult(rho=v.reshape(4, 4))
    n_max = int(math.ceil(cfg.max_time / dt))

    step = 0
    while True:
        k1 = big @ v
        norm = float(np.linalg.norm(k1))
        t = step * dt
        if step % every == 0:
            res.times.append(t)
            res.states.append(v.reshape(4, 4).copy())
        if norm < cfg.convergence_tol or step >= n_max:
            break
        k2 = big @ (v + 0.5 * dt * k1)
        k3 = big @ (v + 0.5 * dt * k2)
        k4 = big @ (v + dt * k3)
        v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        v = _clean(v.reshape(4, 4)).reshape(16)
        step += 1

    res.rho = v.reshape(4, 4).copy()
    res.t_final = t
    res.rhs_norm = norm
    res.converged = norm < cfg.convergence_tol
    if res.times[-1] != t:
        res.times.append(t)
        res.states.append(res.rho.copy())
    if not res.converged and raise_on_timeout:
        raise NotConverged(f"no steady state by t={t:.6g} (|rhs|={norm:.3e})", res)
    return res


def trajectory_rows(res: EvolutionResult, spec: KossakowskiSpec, epsilon: float):
    """Rows ``(t, 16 components, κ₀, ‖rhs‖_F)`` for each sampled state."""
    big = superoperator(spec, epsilon)
    for t, m in zip(res.times, res.states):
        rhs = float(np.linalg.norm(big @ m.reshape(16)))
        yield [t, *hermitian_components(m), kappa0_of(m), rhs]


def trajectory_header() -> list[str]:
    return ["t", *component_names(), "kappa0", "rhs_norm"]
