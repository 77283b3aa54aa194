import pytest

from hypervlc.config import (KEY_HELP, SimConfig, align_bits, build_config,
                             load_config, parse_config_text)
from hypervlc.mapping import Modulation


def test_defaults_build():
    cfg = SimConfig()
    assert cfg.scheme is Modulation.QPSK
    assert cfg.frame_bits == 126
    assert cfg.noise is not None
    assert cfg.noise.received_power > 0


def test_align_bits():
    assert align_bits(1, 126) == 126
    assert align_bits(126, 126) == 126
    assert align_bits(127, 126) == 252
    assert align_bits(1_000_000, 189) == 1_000_188
    with pytest.raises(ValueError):
        align_bits(0, 126)


def test_divisibility_enforced():
    with pytest.raises(ValueError):
        SimConfig(bits_per_point=100)


def test_role_and_mode_validation():
    with pytest.raises(ValueError):
        SimConfig(role="spy")
    with pytest.raises(ValueError):
        SimConfig(scrambler_mode="double")
    with pytest.raises(ValueError):
        SimConfig(channel_kind="fiber")
    with pytest.raises(ValueError):
        SimConfig(snr_grid_db=())


def test_parse_config_text():
    text = """
    # reference setup
    scheme = 8psk
    scrambler=cascade
    snr_grid_db = 0,5,10
    rng_seed = 42   # trailing comment
    """
    values = parse_config_text(text)
    assert values == {"scheme": "8psk", "scrambler": "cascade",
                      "snr_grid_db": "0,5,10", "rng_seed": "42"}


def test_parse_rejects_unknown_key():
    with pytest.raises(ValueError):
        parse_config_text("warp_factor=9")
    with pytest.raises(ValueError):
        parse_config_text("scheme qpsk")


def test_build_config_typed():
    cfg = build_config({
        "scheme": "8psk",
        "bits_per_point": "1000000",
        "master_seed": "0.1,-0.1,0.1,0.1",
        "semi_angle_deg": "45",
        "snr_grid_db": "5,25",
        "smc_q": "0.5",
    })
    assert cfg.scheme is Modulation.PSK8
    # rounded up to a whole number of 189-bit frames
    assert cfg.bits_per_point == 1_000_188
    assert cfg.geometry.lambertian_n == pytest.approx(2.0)
    assert cfg.snr_grid_db == (5.0, 25.0)
    assert cfg.smc.q == 0.5


def test_load_config_with_overrides(tmp_path):
    path = tmp_path / "link.cfg"
    path.write_text("scheme=bpsk\nrng_seed=7\n")
    cfg = load_config(path, overrides=["scheme=qpsk", "cp_len=8"], seed=99)
    assert cfg.scheme is Modulation.QPSK
    assert cfg.ofdm.cp_len == 8
    assert cfg.rng_seed == 99


def test_load_config_bad_override():
    with pytest.raises(ValueError):
        load_config(None, overrides=["nonsense"])
    with pytest.raises(ValueError):
        load_config(None, overrides=["warp=9"])


def test_every_documented_key_parses():
    sample = {
        "scheme": "16qam", "scrambler": "single", "scrambler_pair": "1,3",
        "n_fft": "64", "cp_len": "8", "dc_bias_db": "9",
        "henon_a": "1.76", "henon_b": "0.1",
        "master_seed": "0.1,-0.1,0.1,0.1", "slave_seed": "0.3,-0.1,0.2,0.1",
        "smc_T": "1", "smc_eps1": "0.1", "smc_eps2": "0.1", "smc_q": "0.7",
        "smc_alpha": "0.8", "smc_beta": "0.9", "smc_gamma": "1.2",
        "smc_c1": "0.001", "smc_c2": "0", "smc_c3": "0",
        "sync_preamble": "300", "sync_tol": "1e-6",
        "channel_mode": "snr_sweep", "snr_grid_db": "0,10,20",
        "tx_pos": "0,0,3", "rx_pos": "2.5,2.5,0",
        "tx_normal": "0,0,-1", "rx_normal": "0,0,1",
        "semi_angle_deg": "60", "fov_deg": "85", "rx_area_m2": "1e-4",
        "led_power_w": "3.2", "optical_filter_gain": "1.0",
        "responsivity_a_w": "0.54", "bandwidth_hz": "1e8",
        "temperature_k": "298", "feedback_resistance_ohm": "1e4",
        "background_power_w": "0",
        "symbol_rate_gbps": "1", "room_size_m": "5,3,3",
        "role": "eavesdropper", "bits_per_point": "5000", "rng_seed": "3",
    }
    assert set(sample) == set(KEY_HELP)
    cfg = build_config(sample)
    assert cfg.role == "eavesdropper"
    assert cfg.ofdm.n_fft == 64
    assert cfg.room_size_m == (5.0, 3.0, 3.0)
    assert cfg.symbol_rate_gbps == 1.0
