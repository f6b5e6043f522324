"""Small dense complex linear algebra for one- and two-qubit operators.

Everything here works on plain ``numpy`` arrays. The Hermitian eigensolver
is a cyclic Jacobi iteration, which is exact enough and cheap for the 2x2,
4x4 (and 8x8 dilation) matrices this package deals with.
"""

from __future__ import annotations

import math

import numpy as np

from relres.errors import DomainError, NotHermitian

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SX, SY, SZ)

HERMITIAN_TOL = 1e-10
DENSITY_HERMITIAN_TOL = 1e-12
DENSITY_TRACE_TOL = 1e-12
PSD_TOL = -1e-10

_JACOBI_MAX_SWEEPS = 60


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product ``a ⊗ b``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    ra, ca = a.shape
    rb, cb = b.shape
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(ra * rb, ca * cb)


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def hermitian_eigensystem(h: np.ndarray, tol: float = HERMITIAN_TOL):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Args:
        h: square complex matrix, Hermitian to within ``tol`` entrywise.
        tol: accepted asymmetry ``|h_ij - conj(h_ji)|`` before rejecting.

    Returns:
        ``(w, v)`` with real eigenvalues ``w`` in ascending order and the
        matching orthonormal eigenvectors as the columns of ``v``.

    Raises:
        NotHermitian: if the input is not square or not Hermitian.
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {a.shape}")
    asym = np.max(np.abs(a - dagger(a))) if a.size else 0.0
    if asym > tol:
        raise NotHermitian(f"matrix asymmetry {asym:.3e} exceeds {tol:.1e}")
    a = 0.5 * (a + dagger(a))
    n = a.shape[0]
    v = np.eye(n, dtype=complex)

    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    target = 1e-16 * scale

    for _ in range(_JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # diag(1, conj(phase)) makes the pivot real, then a real rotation
                u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = dagger(u) @ a[idx, :]
                v[:, idx] = v[:, idx] @ u
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(h: np.ndarray) -> np.ndarray:
    return hermitian_eigensystem(h)[0]


def trace_norm(a: np.ndarray) -> float:
    """Schatten-1 norm, the sum of the singular values of ``a``.

    Hermitian inputs use ``sum |eigenvalues|``; anything else goes through
    the Hermitian dilation ``[[0, A], [A†, 0]]`` whose spectrum is ``±σ_k``.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"trace norm needs a square matrix, got {a.shape}")
    if np.max(np.abs(a - dagger(a))) <= 1e-13 * max(1.0, np.max(np.abs(a))):
        return float(np.sum(np.abs(eigvalsh(a))))
    n = a.shape[0]
    dil = np.zeros((2 * n, 2 * n), dtype=complex)
    dil[:n, n:] = a
    dil[n:, :n] = dagger(a)
    w = eigvalsh(dil)
    return float(0.5 * np.sum(np.abs(w)))


def psd_sqrt(rho: np.ndarray, cutoff: float = 1e-15) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues below ``cutoff`` (round-off around zero) are treated as zero.
    """
    w, v = hermitian_eigensystem(rho)
    w = np.where(w > cutoff, w, 0.0)
    return (v * np.sqrt(w)) @ dagger(v)


def partial_trace(rho: np.ndarray, keep: int) -> np.ndarray:
    """Reduced 2x2 state of qubit ``keep`` (1 or 2) from a 4x4 operator."""
    if keep not in (1, 2):
        raise ValueError(f"keep must be 1 or 2, got {keep!r}")
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ikjk->ij", r)
    return np.einsum("kikj->ij", r)


def check_density(rho: np.ndarray, dim: int = 4) -> np.ndarray:
    """Validate a density matrix and return its Hermitian-symmetrized copy.

    Raises:
        DomainError: wrong shape, not Hermitian, trace off by more than
            1e-12, or a most-negative eigenvalue below -1e-10.
    """
    m = np.asarray(rho, dtype=complex)
    if m.shape != (dim, dim):
        raise DomainError(f"density matrix must be {dim}x{dim}, got {m.shape}")
    asym = np.max(np.abs(m - dagger(m)))
    if asym > DENSITY_HERMITIAN_TOL:
        raise DomainError(f"density matrix not Hermitian (asymmetry {asym:.2e})")
    m = 0.5 * (m + dagger(m))
    tr = np.trace(m).real
    if abs(tr - 1.0) > DENSITY_TRACE_TOL:
        raise DomainError(f"density matrix trace {tr!r} differs from 1")
    lo = eigvalsh(m)[0]
    if lo < PSD_TOL:
        raise DomainError(f"density matrix has negative eigenvalue {lo:.3e}")
    return m


def is_density(rho: np.ndarray, dim: int = 4) -> bool:
    try:
        check_density(rho, dim)
    except DomainError:
        return False
    return True


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


SYSY = kron(SY, SY)


def wootters_lambdas(rho: np.ndarray) -> np.ndarray:
    """Square roots of the eigenvalues of ``ρ (σy⊗σy) ρ* (σy⊗σy)``, descending.

    Computed from the Hermitian form ``√ρ ρ̃ √ρ``, which shares its spectrum
    with the non-Hermitian product.
    """
    m = np.asarray(rho, dtype=complex)
    root = psd_sqrt(m)
    tilde = SYSY @ m.conj() @ SYSY
    r = root @ tilde @ root
    mu = eigvalsh(0.5 * (r + dagger(r)))
    mu = np.where(mu > 1e-15, mu, 0.0)
    return np.sqrt(mu)[::-1]


def wootters_witness(rho: np.ndarray) -> float:
    """Unclamped ``√μ1 - √μ2 - √μ3 - √μ4``; positive exactly when entangled."""
    lam = wootters_lambdas(rho)
    return float(lam[0] - lam[1] - lam[2] - lam[3])


def wootters_concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of an arbitrary two-qubit density matrix."""
    return min(1.0, max(0.0, wootters_witness(rho)))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density(rng: np.random.Generator, dim: int = 4, rank: int | None = None) -> np.ndarray:
    """Random density matrix from the Hilbert-Schmidt (Ginibre) ensemble."""
    k = dim if rank is None else rank
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    m = g @ dagger(g)
    return m / np.trace(m).real


def random_hermitian(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + dagger(g))
