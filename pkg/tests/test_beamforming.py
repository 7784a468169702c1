import numpy as np
import pytest

from irspower.beamforming import (
    Beamformer,
    EffectiveChannels,
    effective_channels,
    min_gain,
    optimize_beamformer,
    solve_power_relaxation,
)
from irspower.channel import ChannelRealization
from irspower.phases import PhaseVector


def direct_only_channel(h_bs_mu):
    h_bs_mu = np.atleast_2d(np.asarray(h_bs_mu, dtype=complex))
    k, m = h_bs_mu.shape
    return ChannelRealization(
        h_bs_irs=np.zeros((0, m), dtype=complex),
        h_irs_mu=np.zeros((k, 0), dtype=complex),
        h_bs_mu=h_bs_mu,
    )


def test_beamformer_power_tracks_weights():
    w = Beamformer(w=np.array([3.0, 4.0j]))
    assert w.power == pytest.approx(25.0, rel=1e-12)
    assert np.linalg.norm(w.direction) == pytest.approx(1.0)


def test_effective_channels_no_irs():
    ch = direct_only_channel([[1.0, 2.0], [3.0, 4.0]])
    heff = effective_channels(ch, PhaseVector(theta=np.zeros(0)))
    assert np.allclose(heff.h_eff, ch.h_bs_mu)


def test_effective_channels_scalar_composition():
    # one unit, one antenna: reflected path 1*1*1 plus direct 2 at zero phase
    ch = ChannelRealization(
        h_bs_irs=np.array([[1.0 + 0j]]),
        h_irs_mu=np.array([[1.0 + 0j]]),
        h_bs_mu=np.array([[2.0 + 0j]]),
    )
    heff = effective_channels(ch, PhaseVector(theta=np.zeros(1)))
    assert np.allclose(heff.h_eff, [[3.0]])


def test_effective_channels_phase_rotation():
    ch = ChannelRealization(
        h_bs_irs=np.array([[1.0 + 0j]]),
        h_irs_mu=np.array([[1.0 + 0j]]),
        h_bs_mu=np.array([[0.0 + 0j]]),
    )
    heff = effective_channels(ch, PhaseVector(theta=np.array([np.pi / 2])))
    # row = conj(h_r) * e^{j pi/2} * H; stored vector is its conjugate
    assert np.allclose(heff.h_eff, [[-1.0j]])
    amp = heff.h_eff[0].conj() @ np.array([1.0 + 0j])
    assert amp == pytest.approx(1.0j)


def test_single_user_matched_filter_power():
    heff = EffectiveChannels(h_eff=np.array([[1.0 + 0j, 1.0 + 0j]]))
    w = optimize_beamformer(heff, 1.0, 1.0, 50, np.random.default_rng(0))
    assert w.power == pytest.approx(0.5, rel=1e-7)
    assert np.abs(heff.h_eff[0].conj() @ w.w) ** 2 == pytest.approx(1.0, rel=1e-9)


def test_scalar_channel_power():
    heff = EffectiveChannels(h_eff=np.array([[1.0 + 0j]]))
    w = optimize_beamformer(heff, 1.0, 1.0, 10, np.random.default_rng(0))
    assert w.power == pytest.approx(1.0, rel=1e-8)


def test_two_orthogonal_users_power():
    heff = EffectiveChannels(h_eff=np.array([[1.0 + 0j, 0.0], [0.0, 1.0 + 0j]]))
    w = optimize_beamformer(heff, 1.0, 1.0, 2000, np.random.default_rng(1))
    assert w.power == pytest.approx(2.0, rel=5e-3)
    assert w.power >= 2.0 * (1.0 - 1e-9)


def test_constraints_always_met():
    rng = np.random.default_rng(7)
    for _ in range(20):
        k = int(rng.integers(1, 4))
        m = int(rng.integers(1, 6))
        heff = EffectiveChannels(h_eff=rng.standard_normal((k, m)) + 1j * rng.standard_normal((k, m)))
        gamma = float(rng.uniform(0.5, 4.0))
        sigma = float(rng.uniform(0.1, 2.0))
        w = optimize_beamformer(heff, gamma, sigma, 300, rng)
        sinr = np.abs(heff.h_eff.conj() @ w.w) ** 2 / sigma
        assert np.all(sinr >= gamma * (1.0 - 1e-9))


def test_relaxation_never_exceeds_returned_power():
    rng = np.random.default_rng(42)
    for _ in range(10):
        k, m = 3, 4
        heff = EffectiveChannels(h_eff=rng.standard_normal((k, m)) + 1j * rng.standard_normal((k, m)))
        sol = solve_power_relaxation(heff)
        w = optimize_beamformer(heff, 2.0, 0.5, 500, rng)
        assert w.power >= 2.0 * 0.5 * sol.objective_value * (1.0 - 1e-5)


def test_single_user_exactness_many():
    rng = np.random.default_rng(2718)
    for _ in range(100):
        m = int(rng.integers(1, 9))
        h = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        heff = EffectiveChannels(h_eff=h[None, :])
        gamma = float(rng.uniform(0.5, 4.0))
        sigma = float(rng.uniform(0.1, 2.0))
        w = optimize_beamformer(heff, gamma, sigma, 20, rng)
        assert w.power == pytest.approx(gamma * sigma / np.linalg.norm(h) ** 2, rel=1e-6)


def test_noise_scaling_covariance():
    rng_a = np.random.default_rng(5)
    rng_b = np.random.default_rng(5)
    heff = EffectiveChannels(
        h_eff=np.random.default_rng(9).standard_normal((2, 3))
        + 1j * np.random.default_rng(10).standard_normal((2, 3))
    )
    w1 = optimize_beamformer(heff, 1.5, 1.0, 200, rng_a)
    w4 = optimize_beamformer(heff, 1.5, 4.0, 200, rng_b)
    assert w4.power == pytest.approx(4.0 * w1.power, rel=1e-12)


def test_global_phase_shift_invariance_without_direct_link():
    # with no direct path, rotating every reflection phase by a common delta
    # only rephases h_eff, so the achievable minimum power is unchanged
    rng = np.random.default_rng(14)
    ch = ChannelRealization(
        h_bs_irs=rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2)),
        h_irs_mu=rng.standard_normal((1, 3)) + 1j * rng.standard_normal((1, 3)),
        h_bs_mu=np.zeros((1, 2), dtype=complex),
    )
    theta = rng.uniform(0, 2 * np.pi, size=3)
    delta = 1.234
    p0 = optimize_beamformer(
        effective_channels(ch, PhaseVector(theta=theta)), 1.0, 1.0, 10, np.random.default_rng(0)
    ).power
    p1 = optimize_beamformer(
        effective_channels(ch, PhaseVector(theta=theta + delta)), 1.0, 1.0, 10, np.random.default_rng(0)
    ).power
    assert p1 == pytest.approx(p0, rel=1e-9)


def test_min_gain_selection():
    heff = EffectiveChannels(h_eff=np.array([[2.0 + 0j, 0.0], [0.0, 1.0 + 0j]]))
    assert min_gain(heff, np.array([1.0 + 0j, 0.0])) == pytest.approx(0.0)
    assert min_gain(heff, np.array([np.sqrt(0.5), np.sqrt(0.5)], dtype=complex)) == pytest.approx(0.5)


def test_invalid_parameters_rejected():
    heff = EffectiveChannels(h_eff=np.array([[1.0 + 0j]]))
    with pytest.raises(ValueError):
        optimize_beamformer(heff, 0.0, 1.0, 10, np.random.default_rng(0))
    with pytest.raises(ValueError):
        optimize_beamformer(heff, 1.0, -1.0, 10, np.random.default_rng(0))
    with pytest.raises(ValueError):
        optimize_beamformer(heff, 1.0, 1.0, 0, np.random.default_rng(0))
