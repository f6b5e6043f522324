import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relres import qmat
from relres.errors import DomainError, NoRoot
from relres.hawking import (
    GisinParams,
    HawkingEnv,
    accessible_coherence_closed,
    accessible_state,
    branch_weights,
    entanglement_threshold_alpha,
    gisin_density,
    gisin_hawking_resources,
    gisin_matrix_bloch,
    gisin_matrix_direct,
    hawking_channel_accessible,
    hawking_kraus,
    hawking_theta,
)
from relres.resources import l1_coherence, trace_distance_discord_closed

alphas = st.floats(0.0, 1.0)
phis = st.floats(0.0, math.pi / 2)
thetas = st.one_of(st.floats(0.0, 60.0), st.just(math.inf))


def hand_accessible(alpha, phi, theta):
    """Populations and coherence of the channel output, derived by hand.

    Qubit 2 keeps ``|1>`` and sends ``|0>`` to ``c|0>`` or ``s|1>``.
    """
    q = 1.0 / (1.0 + math.exp(-theta))
    return (
        q * (1 - alpha) / 2,
        alpha * math.sin(phi) ** 2 + (1 - q) * (1 - alpha) / 2,
        q * alpha * math.cos(phi) ** 2,
        (1 - alpha) / 2 + (1 - q) * alpha * math.cos(phi) ** 2,
        math.sqrt(q) * alpha * math.sin(phi) * math.cos(phi),
    )


def test_env_validation_and_theta():
    with pytest.raises(DomainError, match="r0 must exceed 1"):
        HawkingEnv(10.0, 1.0, 0.9)
    with pytest.raises(DomainError):
        HawkingEnv(-1.0, 1.0, 1.1)
    env = HawkingEnv(10.0, 2.0, 2.0)
    assert env.theta == pytest.approx(5.0 * math.sqrt(0.5))
    assert env.varpi == 5.0
    assert hawking_theta(HawkingEnv(10.0, 0.0, 1.1)) == math.inf
    assert HawkingEnv(10.0, 1.0, 2.0).rindler_valid
    assert not HawkingEnv(10.0, 1.0, 3.5).rindler_valid


def test_from_mass():
    env = HawkingEnv.from_mass(1.0, 2.0, 1.5)
    assert env.t_hawking == pytest.approx(1 / (16 * math.pi))
    with pytest.raises(DomainError):
        HawkingEnv.from_mass(1.0, 0.0, 1.5)


def test_gisin_params_domain():
    with pytest.raises(DomainError):
        GisinParams(1.2, 0.1)
    with pytest.raises(DomainError):
        GisinParams(0.5, 2.0)


@settings(max_examples=100, deadline=None)
@given(alpha=alphas, phi=phis)
def test_three_gisin_constructions_agree(alpha, phi):
    p = GisinParams(alpha, phi)
    m = gisin_density(p).matrix()
    assert np.allclose(gisin_matrix_direct(p), m, atol=1e-14)
    assert np.allclose(gisin_matrix_bloch(p), m, atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(theta=thetas)
def test_kraus_completeness(theta):
    k0, k1 = hawking_kraus(theta)
    total = k0.conj().T @ k0 + k1.conj().T @ k1
    assert np.allclose(total, np.eye(2), atol=1e-15)
    c2, s2 = branch_weights(theta)
    assert c2 + s2 == pytest.approx(1.0, abs=1e-15)


def test_branch_weights_limits():
    assert branch_weights(0.0) == (0.5, 0.5)
    assert branch_weights(math.inf) == (1.0, 0.0)
    assert branch_weights(1e6) == (1.0, 0.0)
    with pytest.raises(DomainError):
        branch_weights(-1.0)


def test_zero_temperature_channel_is_identity():
    rng = np.random.default_rng(0)
    rho = qmat.random_density(rng)
    assert np.allclose(hawking_channel_accessible(rho, math.inf), rho, atol=1e-15)


def test_channel_preserves_density_matrices():
    rng = np.random.default_rng(1)
    for theta in (0.0, 0.7, 3.0):
        out = hawking_channel_accessible(qmat.random_density(rng), theta)
        assert qmat.is_density(out)


@settings(max_examples=150, deadline=None)
@given(alpha=alphas, phi=phis, theta=thetas)
def test_accessible_state_matches_hand_derivation(alpha, phi, theta):
    x = accessible_state(GisinParams(alpha, phi), theta)
    s11, s22, s33, s44, s23 = hand_accessible(alpha, phi, theta)
    got = (x.s11, x.s22, x.s33, x.s44, x.s23)
    assert got == pytest.approx((s11, s22, s33, s44, s23), abs=1e-14)
    assert x.s14 == 0.0


@settings(max_examples=150, deadline=None)
@given(alpha=alphas, phi=phis, theta=thetas)
def test_coherence_equals_discord_on_family(alpha, phi, theta):
    x = accessible_state(GisinParams(alpha, phi), theta)
    ch = accessible_coherence_closed(alpha, phi, theta)
    assert l1_coherence(x.matrix()) == pytest.approx(ch, abs=1e-14)
    assert trace_distance_discord_closed(x) == pytest.approx(ch, abs=1e-12)


def test_zero_temperature_anchor():
    rep = gisin_hawking_resources(GisinParams(1.0, math.pi / 4), HawkingEnv(10.0, 0.0, 1.1))
    assert rep.as_tuple() == pytest.approx((1.0, 1.0, 1.0, 1.0), abs=1e-12)


def test_gisin_concurrence_closed_form_at_zero_temperature():
    # C = max(0, α sin 2φ - (1 - α)) for the Gisin state itself
    for alpha in (0.3, 0.5, 0.7, 1.0):
        for phi in (math.pi / 8, math.pi / 4):
            rep = gisin_hawking_resources(GisinParams(alpha, phi), HawkingEnv(1.0, 0.0, 1.1))
            expect = max(0.0, alpha * math.sin(2 * phi) - (1 - alpha))
            assert rep.concurrence == pytest.approx(expect, abs=1e-14)


def test_resources_decrease_with_temperature():
    p = GisinParams(0.8, math.pi / 4)
    temps = np.linspace(0.0, 30.0, 61)
    ch = [gisin_hawking_resources(p, HawkingEnv(10.0, t, 1.1)).coherence for t in temps]
    assert np.all(np.diff(ch) <= 1e-15)


def test_threshold_both_routes():
    expect = (math.sqrt(17) - 3) / 2
    for route in ("xstate", "wootters"):
        assert entanglement_threshold_alpha(math.pi / 4, 0.0, route=route) == pytest.approx(expect, abs=1e-8)
    # zero temperature: α sin 2φ = 1 - α
    assert entanglement_threshold_alpha(math.pi / 4, math.inf) == pytest.approx(0.5, abs=1e-9)
    phi = math.pi / 8
    zero_t = 1 / (1 + math.sin(2 * phi))
    assert entanglement_threshold_alpha(phi, math.inf, route="wootters") == pytest.approx(zero_t, abs=1e-8)
    with pytest.raises(DomainError):
        entanglement_threshold_alpha(0.0, 1.0)
    with pytest.raises(ValueError):
        entanglement_threshold_alpha(0.5, 1.0, route="nope")


def test_threshold_no_root(monkeypatch):
    import relres.hawking as hk

    monkeypatch.setattr(hk, "_witness", lambda *a: -1.0)
    with pytest.raises(NoRoot):
        hk.entanglement_threshold_alpha(math.pi / 4, 1.0)
