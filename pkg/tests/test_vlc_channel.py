import math

import numpy as np
import pytest

from hypervlc.ofdm import TimeSignal
from hypervlc.vlc_channel import (ChannelGeometry, ChannelMode, NoiseParams,
                                  apply_channel, lambertian_order, los_gain,
                                  noise_variance, shot_noise_std,
                                  thermal_noise_std, total_noise_std)


def test_lambertian_order_values():
    assert lambertian_order(60.0) == pytest.approx(1.0)
    assert lambertian_order(45.0) == pytest.approx(2.0)
    assert lambertian_order(30.0) == pytest.approx(4.819, abs=1e-3)


def test_lambertian_order_domain():
    for bad in (0.0, 90.0, -5.0, 120.0):
        with pytest.raises(ValueError):
            lambertian_order(bad)


def test_los_gain_reference_geometry():
    # ceiling emitter (0,0,3) to floor corner receiver (2.5,2.5,0):
    # d = sqrt(21.5), cos(phi) = cos(psi) = 3/d, n = 1, A = 1 cm^2
    geom = ChannelGeometry()
    d = math.sqrt(21.5)
    expect = (2.0 / (2 * math.pi * d * d)) * (3.0 / d) * 1e-4 * (3.0 / d)
    h = los_gain(geom)
    assert h == pytest.approx(expect, rel=1e-12)
    assert h == pytest.approx(6.20e-7, rel=0.01)


def test_los_gain_fov_cutoff_exact():
    # psi ~ 49.7 degrees here; any smaller FOV kills the link exactly
    geom = ChannelGeometry(fov_half_angle_deg=45.0)
    assert los_gain(geom) == 0.0


def test_los_gain_directly_below():
    d = 2.5
    geom = ChannelGeometry(emitter_pos=(0, 0, 3), receiver_pos=(0, 0, 3 - d))
    assert los_gain(geom) == pytest.approx(1e-4 / (math.pi * d * d))


def test_los_gain_monotone_in_distance():
    gains = []
    for z in np.linspace(0.5, 2.9, 12):
        geom = ChannelGeometry(receiver_pos=(2.5 * (3 - z) / 3,
                                             2.5 * (3 - z) / 3, z))
        gains.append(los_gain(geom))
    # receiver slides along the ray toward the emitter: gain must grow
    assert all(a < b for a, b in zip(gains, gains[1:]))


def test_los_gain_continuous_inside_fov():
    # smooth everywhere except the FOV boundary, where it drops to zero
    geom = ChannelGeometry(fov_half_angle_deg=90.0)
    base = los_gain(geom)
    nudged = los_gain(ChannelGeometry(fov_half_angle_deg=90.0,
                                      receiver_pos=(2.5 + 1e-6, 2.5, 0.0)))
    assert nudged == pytest.approx(base, rel=1e-4)
    # same nudge across the boundary is a jump to exactly zero
    tight = ChannelGeometry(fov_half_angle_deg=49.7)
    inside = los_gain(tight)
    outside = los_gain(ChannelGeometry(fov_half_angle_deg=49.6))
    assert inside > 0.0 and outside == 0.0


def test_los_gain_errors():
    with pytest.raises(ValueError):
        los_gain(ChannelGeometry(receiver_pos=(0.0, 0.0, 3.0)))
    with pytest.raises(ValueError):
        los_gain(ChannelGeometry(receiver_pos=(0.0, 0.0, 5.0)))  # behind


def test_geometry_validation():
    with pytest.raises(ValueError):
        ChannelGeometry(lambertian_n=-1)
    with pytest.raises(ValueError):
        ChannelGeometry(receiver_area=0)
    with pytest.raises(ValueError):
        ChannelGeometry(fov_half_angle_deg=0)
    with pytest.raises(ValueError):
        ChannelGeometry(fov_half_angle_deg=91)
    with pytest.raises(ValueError):
        ChannelGeometry(emitter_power=0)


def test_noise_zero_limit():
    p = NoiseParams(received_power=0.0, background_power=0.0,
                    feedback_resistance=math.inf)
    assert noise_variance(p) == 0.0


def test_noise_pythagorean():
    assert total_noise_std(3.0, 4.0) == pytest.approx(5.0)


def test_noise_reference_regression():
    # independent arithmetic on the published default constants
    geom = ChannelGeometry()
    p_r = los_gain(geom) * geom.emitter_power
    p = NoiseParams(received_power=p_r)
    q = 1.602176634e-19
    kb = 1.380649e-23
    shot2 = 2 * q * 0.54 * p_r * 100e6
    therm2 = 4 * kb * 298.0 * 100e6 / 10e3
    assert shot_noise_std(p) == pytest.approx(math.sqrt(shot2), rel=1e-12)
    assert thermal_noise_std(p) == pytest.approx(math.sqrt(therm2), rel=1e-12)
    assert noise_variance(p) == pytest.approx(math.sqrt(shot2 + therm2), rel=1e-12)
    assert noise_variance(p) == pytest.approx(1.41026e-8, rel=1e-4)


def test_thermal_over_bandwidth_switch():
    p = NoiseParams(received_power=1e-6, thermal_over_bandwidth=True)
    expect = math.sqrt(4 * 1.380649e-23 * 298.0 / (100e6 * 10e3))
    assert thermal_noise_std(p) == pytest.approx(expect, rel=1e-12)


def test_noise_validation():
    with pytest.raises(ValueError):
        NoiseParams(received_power=-1e-9)
    with pytest.raises(ValueError):
        NoiseParams(received_power=0, bandwidth=0)
    with pytest.raises(ValueError):
        NoiseParams(received_power=0, temperature=-1)


def test_channel_mode_validation():
    with pytest.raises(ValueError):
        ChannelMode("warp")
    with pytest.raises(ValueError):
        ChannelMode("snr_sweep")
    with pytest.raises(ValueError):
        ChannelMode("snr_sweep", math.inf)
    ChannelMode("off")
    ChannelMode("snr_sweep", 25.0)


def test_off_mode_identity():
    sig = TimeSignal(np.linspace(0, 1, 64), dc_bias=0.5)
    out = apply_channel(sig, ChannelMode("off"))
    assert np.array_equal(out.samples, sig.samples)
    assert out.dc_bias == sig.dc_bias


def test_snr_sweep_calibration():
    # 1e6 samples at 25 dB: empirical SNR within +-0.2 dB of target
    rng = np.random.default_rng(11)
    x = rng.standard_normal(1_000_000)
    sig = TimeSignal(x)
    out = apply_channel(sig, ChannelMode("snr_sweep", 25.0), rng_seed=99)
    noise = out.samples - x
    snr_db = 10 * math.log10(np.var(x) / np.var(noise))
    assert snr_db == pytest.approx(25.0, abs=0.2)


def test_noise_moments_converge():
    rng = np.random.default_rng(12)
    x = rng.standard_normal(1_000_000)
    out = apply_channel(TimeSignal(x), ChannelMode("snr_sweep", 10.0),
                        rng_seed=5)
    noise = out.samples - x
    sigma2 = np.var(x) / 10.0
    assert abs(noise.mean()) < 3 * math.sqrt(sigma2 / x.size)
    assert np.var(noise) == pytest.approx(sigma2, rel=0.01)


def test_determinism():
    x = np.linspace(-1, 1, 1000)
    a = apply_channel(TimeSignal(x), ChannelMode("snr_sweep", 5.0), rng_seed=7)
    b = apply_channel(TimeSignal(x), ChannelMode("snr_sweep", 5.0), rng_seed=7)
    assert np.array_equal(a.samples, b.samples)
    c = apply_channel(TimeSignal(x), ChannelMode("snr_sweep", 5.0), rng_seed=8)
    assert not np.array_equal(a.samples, c.samples)


def test_physical_mode_scales_and_adds_noise():
    # added noise: mean -> 0, variance -> N_total^2 (1e6 samples, 1%)
    geom = ChannelGeometry()
    p = NoiseParams(received_power=los_gain(geom) * geom.emitter_power)
    x = np.ones(1_000_000)
    out = apply_channel(TimeSignal(x, dc_bias=1.0), ChannelMode("physical"),
                        geometry=geom, noise=p, rng_seed=3)
    gain = los_gain(geom) * p.responsivity
    assert out.dc_bias == pytest.approx(gain)
    resid = out.samples - gain * x
    sigma = noise_variance(p)
    assert abs(resid.mean()) < 4 * sigma / math.sqrt(x.size)
    assert np.var(resid) == pytest.approx(sigma ** 2, rel=0.01)


def test_bpsk_awgn_matches_q_function():
    # antipodal signalling straight through the sweep channel: measured BER
    # within 3x of Q(sqrt(snr_linear))
    rng = np.random.default_rng(13)
    n = 1_000_000
    snr_db = 9.0
    bits = rng.integers(0, 2, n)
    x = 1.0 - 2.0 * bits
    out = apply_channel(TimeSignal(x), ChannelMode("snr_sweep", snr_db),
                        rng_seed=17)
    ber = np.mean((out.samples < 0) != (bits == 1))
    q = 0.5 * math.erfc(math.sqrt(10 ** (snr_db / 10)) / math.sqrt(2))
    assert q / 3 < ber < 3 * q


def test_empty_signal_rejected():
    with pytest.raises(ValueError):
        apply_channel(TimeSignal(np.array([])), ChannelMode("off"))
