"""Simulation configuration: typed dataclass plus key=value file parsing.

Every geometry, noise and controller parameter of the reference setup has
a config key (see KEY_HELP / README). Values parse from plain-text files
of `key=value` lines with `#` comments; `--set key=value` overrides layer
on top. Room size and symbol rate are carried as metadata only; they do
not enter any computed quantity.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .henon import HenonParams, HenonState
from .mapping import Modulation
from .ofdm import OfdmConfig
from .scrambler import DimensionPair
from .smc_sync import SmcParams
from .vlc_channel import ChannelGeometry, NoiseParams, lambertian_order, los_gain

ROLES = ("legitimate", "eavesdropper")
SCRAMBLER_MODES = ("off", "single", "cascade")
CHANNEL_KINDS = ("off", "physical", "snr_sweep")


@dataclass
class SimConfig:
    scheme: Modulation = Modulation.QPSK
    scrambler_mode: str = "cascade"
    scrambler_pair: DimensionPair = field(default_factory=lambda: DimensionPair(1, 2))
    ofdm: OfdmConfig = field(default_factory=OfdmConfig)
    henon: HenonParams = field(default_factory=HenonParams)
    master_seed: HenonState = HenonState(0.1, -0.1, 0.1, 0.1)
    slave_seed: HenonState = HenonState(0.3, -0.1, 0.2, 0.1)
    smc: SmcParams = field(default_factory=SmcParams)
    sync_preamble: int = 500
    sync_tol: float = 1e-6
    channel_kind: str = "snr_sweep"
    geometry: ChannelGeometry = field(default_factory=ChannelGeometry)
    noise: NoiseParams | None = None
    optical_filter_gain: float = 1.0
    snr_grid_db: tuple = (0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0)
    bits_per_point: int = 189_000
    rng_seed: int = 1
    role: str = "legitimate"
    # metadata only
    symbol_rate_gbps: float = 1.0
    room_size_m: tuple = (5.0, 3.0, 3.0)

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}")
        if self.scrambler_mode not in SCRAMBLER_MODES:
            raise ValueError(f"scrambler_mode must be one of {SCRAMBLER_MODES}")
        if self.channel_kind not in CHANNEL_KINDS:
            raise ValueError(f"channel_kind must be one of {CHANNEL_KINDS}")
        if self.sync_preamble < 1:
            raise ValueError("sync_preamble must be >= 1")
        if self.sync_tol < 0:
            raise ValueError("sync_tol must be >= 0")
        if not self.snr_grid_db:
            raise ValueError("snr_grid_db must be nonempty")
        if self.noise is None:
            # default received power: LOS gain times the emitter power
            self.noise = NoiseParams(
                received_power=los_gain(self.geometry) * self.geometry.emitter_power)
        if self.bits_per_point < 1:
            raise ValueError("bits_per_point must be >= 1")
        if self.bits_per_point % self.frame_bits != 0:
            raise ValueError(
                f"bits_per_point {self.bits_per_point} must be a multiple of "
                f"{self.frame_bits} bits per OFDM frame "
                f"({self.ofdm.n_data} symbols x {self.scheme.bits_per_symbol} bits)")

    @property
    def frame_bits(self) -> int:
        return self.ofdm.n_data * self.scheme.bits_per_symbol

    def replace(self, **kwargs) -> "SimConfig":
        return dataclasses.replace(self, **kwargs)


def align_bits(bits: int, frame_bits: int) -> int:
    """Smallest multiple of frame_bits that is >= bits."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    return -(-bits // frame_bits) * frame_bits


def _parse_floats(text: str, n: int, key: str) -> tuple:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != n:
        raise ValueError(f"{key} expects {n} comma-separated numbers")
    return tuple(float(p) for p in parts)


KEY_HELP = {
    "scheme": "modulation: bpsk | qpsk | 8psk | 16qam",
    "scrambler": "off | single | cascade",
    "scrambler_pair": "dims for single mode, e.g. 1,2",
    "n_fft": "FFT size (power of two)",
    "cp_len": "cyclic prefix length",
    "dc_bias_db": "DC bias above signal rms, dB",
    "henon_a": "map coefficient a",
    "henon_b": "map coefficient b",
    "master_seed": "transmitter map seed x1,x2,x3,x4",
    "slave_seed": "receiver map seed y1,y2,y3,y4",
    "smc_T": "controller sampling step",
    "smc_eps1": "reaching-law gain 1",
    "smc_eps2": "reaching-law gain 2",
    "smc_q": "reaching-law coefficient",
    "smc_alpha": "projective scaling factor",
    "smc_beta": "reaching-law exponent in (0,1)",
    "smc_gamma": "reaching-law exponent > 1",
    "smc_c1": "sliding-surface coefficient 1",
    "smc_c2": "sliding-surface coefficient 2",
    "smc_c3": "sliding-surface coefficient 3",
    "sync_preamble": "controller iterations before payload",
    "sync_tol": "sup-norm convergence tolerance",
    "channel_mode": "off | physical | snr_sweep",
    "snr_grid_db": "sweep grid, e.g. 0,5,10,15,20,25,30",
    "tx_pos": "emitter position x,y,z (m)",
    "rx_pos": "receiver position x,y,z (m)",
    "tx_normal": "emitter normal x,y,z",
    "rx_normal": "receiver normal x,y,z",
    "semi_angle_deg": "emitter half-power semi-angle (deg)",
    "fov_deg": "receiver FOV half-angle (deg)",
    "rx_area_m2": "receiver active area (m^2)",
    "led_power_w": "emitter optical power (W)",
    "optical_filter_gain": "receiver optical filter gain",
    "responsivity_a_w": "photodiode responsivity (A/W)",
    "bandwidth_hz": "detector bandwidth (Hz)",
    "temperature_k": "absolute temperature (K)",
    "feedback_resistance_ohm": "feedback resistance (ohm)",
    "background_power_w": "background optical power (W)",
    "symbol_rate_gbps": "metadata only",
    "room_size_m": "metadata only, e.g. 5,3,3",
    "role": "legitimate | eavesdropper",
    "bits_per_point": "payload bits per sweep point (rounded up to frames)",
    "rng_seed": "root random seed",
}


def parse_config_text(text: str) -> dict[str, str]:
    """key=value lines into a dict; '#' starts a comment; keys validated."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, val = line.split("=", 1)
        key = key.strip()
        if key not in KEY_HELP:
            raise ValueError(f"line {lineno}: unknown config key {key!r}")
        values[key] = val.strip()
    return values


def build_config(values: dict[str, str]) -> SimConfig:
    """Typed SimConfig from string values; unset keys use defaults.

    bits_per_point is rounded up to a whole number of OFDM frames.
    """
    for key in values:
        if key not in KEY_HELP:
            raise ValueError(f"unknown config key {key!r}")
    get = values.get

    scheme = Modulation.parse(get("scheme", "qpsk"))
    ofdm = OfdmConfig(
        n_fft=int(get("n_fft", "128")),
        cp_len=int(get("cp_len", "16")),
        dc_bias_db=float(get("dc_bias_db", "7.0")),
    )
    henon = HenonParams(a=float(get("henon_a", "1.76")),
                        b=float(get("henon_b", "0.1")))
    master_seed = HenonState(*_parse_floats(get("master_seed", "0.1,-0.1,0.1,0.1"),
                                            4, "master_seed"))
    slave_seed = HenonState(*_parse_floats(get("slave_seed", "0.3,-0.1,0.2,0.1"),
                                           4, "slave_seed"))
    smc = SmcParams(
        T=float(get("smc_T", "1.0")),
        eps1=float(get("smc_eps1", "0.1")),
        eps2=float(get("smc_eps2", "0.1")),
        q=float(get("smc_q", "0.7")),
        alpha=float(get("smc_alpha", "0.8")),
        beta=float(get("smc_beta", "0.9")),
        gamma=float(get("smc_gamma", "1.2")),
        c1=float(get("smc_c1", "0.001")),
        c2=float(get("smc_c2", "0.0")),
        c3=float(get("smc_c3", "0.0")),
    )
    geometry = ChannelGeometry(
        emitter_pos=_parse_floats(get("tx_pos", "0,0,3"), 3, "tx_pos"),
        receiver_pos=_parse_floats(get("rx_pos", "2.5,2.5,0"), 3, "rx_pos"),
        emitter_normal=_parse_floats(get("tx_normal", "0,0,-1"), 3, "tx_normal"),
        receiver_normal=_parse_floats(get("rx_normal", "0,0,1"), 3, "rx_normal"),
        lambertian_n=lambertian_order(float(get("semi_angle_deg", "60"))),
        receiver_area=float(get("rx_area_m2", "1e-4")),
        fov_half_angle_deg=float(get("fov_deg", "85")),
        emitter_power=float(get("led_power_w", "3.2")),
    )
    noise = NoiseParams(
        received_power=los_gain(geometry) * geometry.emitter_power,
        background_power=float(get("background_power_w", "0.0")),
        responsivity=float(get("responsivity_a_w", "0.54")),
        bandwidth=float(get("bandwidth_hz", "1e8")),
        temperature=float(get("temperature_k", "298")),
        feedback_resistance=float(get("feedback_resistance_ohm", "1e4")),
    )
    grid = tuple(float(p) for p in
                 get("snr_grid_db", "0,5,10,15,20,25,30").replace(",", " ").split())
    pair_vals = _parse_floats(get("scrambler_pair", "1,2"), 2, "scrambler_pair")
    pair = DimensionPair(int(pair_vals[0]), int(pair_vals[1]))

    cfg = SimConfig(
        scheme=scheme,
        scrambler_mode=get("scrambler", "cascade"),
        scrambler_pair=pair,
        ofdm=ofdm,
        henon=henon,
        master_seed=master_seed,
        slave_seed=slave_seed,
        smc=smc,
        sync_preamble=int(get("sync_preamble", "500")),
        sync_tol=float(get("sync_tol", "1e-6")),
        channel_kind=get("channel_mode", "snr_sweep"),
        geometry=geometry,
        noise=noise,
        optical_filter_gain=float(get("optical_filter_gain", "1.0")),
        snr_grid_db=grid,
        bits_per_point=align_bits(
            int(float(get("bits_per_point", "189000"))),
            (ofdm.n_fft // 2 - 1) * scheme.bits_per_symbol),
        rng_seed=int(get("rng_seed", "1")),
        role=get("role", "legitimate"),
        symbol_rate_gbps=float(get("symbol_rate_gbps", "1.0")),
        room_size_m=_parse_floats(get("room_size_m", "5,3,3"), 3, "room_size_m"),
    )
    return cfg


def load_config(path=None, overrides=(), seed: int | None = None) -> SimConfig:
    """Config file (optional) + --set overrides + --seed into a SimConfig."""
    values: dict[str, str] = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            values.update(parse_config_text(fh.read()))
    for item in overrides:
        if "=" not in item:
            raise ValueError(f"override must be key=value, got {item!r}")
        key, val = item.split("=", 1)
        key = key.strip()
        if key not in KEY_HELP:
            raise ValueError(f"unknown config key {key!r}")
        values[key] = val.strip()
    cfg = build_config(values)
    if seed is not None:
        cfg = cfg.replace(rng_seed=seed)
    return cfg
