import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relres import qmat
from relres.detectors import equilibrium_matrix
from relres.dynamics import (
    SINGLET,
    EvolutionConfig,
    KossakowskiSpec,
    component_names,
    evolve,
    hermitian_components,
    kappa0_of,
    kms_omega,
    kossakowski_matrix,
    lindblad_rhs,
    superoperator,
    trajectory_header,
    trajectory_rows,
    with_kappa0,
)
from relres.errors import DomainError, NotConverged


def collective_rhs(rho, spec, eps):
    """Same generator through collective operators ``S_i = σ_i⊗I + I⊗σ_i``."""
    s = [qmat.kron(p, qmat.I2) + qmat.kron(qmat.I2, p) for p in qmat.PAULI]
    x = kossakowski_matrix(spec)
    h = 0.5 * eps * sum(r * si for r, si in zip(spec.r, s))
    out = -1j * (h @ rho - rho @ h)
    for i in range(3):
        for j in range(3):
            out += 0.5 * x[i, j] * (2 * s[j] @ rho @ s[i] - s[i] @ s[j] @ rho - rho @ s[i] @ s[j])
    return out


specs = st.builds(
    lambda gp, frac, g0: KossakowskiSpec(gp, frac * gp, g0),
    st.floats(0.1, 3.0), st.floats(-1.0, 1.0), st.floats(0.0, 2.0),
)


def test_spec_validation():
    with pytest.raises(DomainError):
        KossakowskiSpec(-1.0, 0.0)
    with pytest.raises(DomainError):
        KossakowskiSpec(1.0, 1.5)
    with pytest.raises(DomainError):
        KossakowskiSpec(1.0, 0.5, r=(1.0, 1.0, 0.0))
    assert KossakowskiSpec(2.0, 1.0).omega_ratio == 0.5


def test_kossakowski_matrix_is_positive():
    x = kossakowski_matrix(KossakowskiSpec(1.0, 0.9, 0.3))
    assert np.allclose(x, x.conj().T)
    assert np.min(np.linalg.eigvalsh(x)) >= -1e-12


@settings(max_examples=40, deadline=None)
@given(spec=specs, seed=st.integers(0, 2**32 - 1))
def test_generator_matches_collective_form(spec, seed):
    rho = qmat.random_density(np.random.default_rng(seed))
    assert np.allclose(lindblad_rhs(rho, spec, 5.0), collective_rhs(rho, spec, 5.0), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(spec=specs, seed=st.integers(0, 2**32 - 1))
def test_generator_structure(spec, seed):
    rho = qmat.random_density(np.random.default_rng(seed))
    d = lindblad_rhs(rho, spec, 3.0)
    assert abs(np.trace(d)) < 1e-12
    assert np.allclose(d, d.conj().T, atol=1e-12)
    assert abs(kappa0_of(d)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(w=st.floats(0.0, 1.0), k=st.floats(-3.0, 1.0), g0=st.floats(0.0, 2.0))
def test_equilibrium_is_stationary_for_any_omega_zero(w, k, g0):
    spec = KossakowskiSpec(1.0, w, g0)
    big = superoperator(spec, 5.0)
    assert np.linalg.norm(big @ equilibrium_matrix(w, k).reshape(16)) < 1e-12


def test_superoperator_matches_rhs():
    spec = KossakowskiSpec(1.3, 0.4, 0.2)
    rho = qmat.random_density(np.random.default_rng(0))
    big = superoperator(spec, 2.0)
    assert np.allclose((big @ rho.reshape(16)).reshape(4, 4), lindblad_rhs(rho, spec, 2.0), atol=1e-13)


def test_generator_spectrum_is_stable():
    ev = np.linalg.eigvals(superoperator(KossakowskiSpec(1.0, 0.6, 0.1), 5.0))
    assert np.max(ev.real) < 1e-12
    # trace and κ0 give two conserved directions
    assert np.sum(np.abs(ev) < 1e-10) == 2


def test_with_kappa0():
    rng = np.random.default_rng(1)
    for target in (-3.0, -2.0, 0.0, 0.6, 1.0):
        rho = with_kappa0(qmat.random_density(rng), target)
        assert kappa0_of(rho) == pytest.approx(target, abs=1e-12)
        assert qmat.is_density(rho)
    assert kappa0_of(SINGLET) == pytest.approx(-3.0)
    with pytest.raises(DomainError):
        with_kappa0(np.eye(4) / 4, 1.5)


def test_kms_omega():
    for beta, eps in ((0.5, 5.0), (2.0, 1.0)):
        assert kms_omega(beta, eps) == pytest.approx(math.tanh(beta * eps / 2))


def test_component_layout():
    names = component_names()
    assert len(names) == 16 and len(set(names)) == 16
    rho = qmat.random_density(np.random.default_rng(2))
    comps = hermitian_components(rho)
    assert comps[:4] == pytest.approx(np.real(np.diag(rho)))
    assert comps[names.index("im_03")] == pytest.approx(rho[0, 3].imag)
    assert trajectory_header()[0] == "t" and trajectory_header()[-2:] == ["kappa0", "rhs_norm"]


def test_evolution_reaches_equilibrium():
    w, k = math.tanh(1.0), 0.1
    rho0 = with_kappa0(qmat.random_density(np.random.default_rng(3)), k)
    spec = KossakowskiSpec(1.0, w, 0.0)
    res = evolve(rho0, spec, 5.0)
    assert res.converged
    assert np.max(np.abs(res.rho - equilibrium_matrix(w, k))) < 1e-9
    drift = max(abs(kappa0_of(m) - k) for m in res.states)
    assert drift < 1e-12
    rows = list(trajectory_rows(res, spec, 5.0))
    assert len(rows) == len(res.times)
    assert len(rows[0]) == len(trajectory_header())
    assert rows[-1][-1] < 1e-10


def test_omega_zero_does_not_move_the_steady_state():
    w, k = 0.7, -0.5
    rho0 = with_kappa0(qmat.random_density(np.random.default_rng(4)), k)
    a = evolve(rho0, KossakowskiSpec(1.0, w, 0.0), 5.0).rho
    b = evolve(rho0, KossakowskiSpec(1.0, w, 0.8), 5.0).rho
    assert np.max(np.abs(a - b)) < 1e-9


def test_timeout_and_step_bound():
    rho0 = with_kappa0(qmat.random_density(np.random.default_rng(5)), 0.0)
    spec = KossakowskiSpec(1.0, 0.5)
    with pytest.raises(NotConverged) as info:
        evolve(rho0, spec, 5.0, EvolutionConfig(max_time=0.1))
    assert info.value.result is not None and not info.value.result.converged
    res = evolve(rho0, spec, 5.0, EvolutionConfig(max_time=0.1), raise_on_timeout=False)
    assert not res.converged and res.t_final == pytest.approx(0.1, abs=1e-3)
    with pytest.raises(DomainError, match="bound"):
        evolve(rho0, spec, 5.0, EvolutionConfig(dt=0.1))
