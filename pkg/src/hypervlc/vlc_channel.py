"""Line-of-sight optical channel: Lambertian gain, photodiode noise.

The LOS gain for an emitter E and receiver R at distance d is

    H = (n + 1) / (2 pi d^2) * cos^n(phi) * A_R * cos(psi)

with phi the emission angle off the emitter normal, psi the incidence
angle off the receiver normal, and H = 0 outside the receiver's field of
view. Propagation delay is dropped (single flat tap); wavelength structure
is collapsed into the total emitter power.

Receiver noise combines shot and thermal contributions in quadrature:

    shot^2    = 2 q R (P_r + P_n) B        [A^2]
    thermal^2 = 4 K T B / R_f              [A^2]

The thermal term grows with bandwidth; the historical variant with the
bandwidth in the denominator stays available behind thermal_over_bandwidth
for comparison only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ofdm import TimeSignal

ELECTRON_CHARGE = 1.602176634e-19  # C
BOLTZMANN = 1.380649e-23  # J/K


def lambertian_order(semi_angle_half_power_deg: float) -> float:
    """Mode number from the half-power semi-angle: n = -ln2 / ln(cos a)."""
    if not 0.0 < semi_angle_half_power_deg < 90.0:
        raise ValueError("semi-angle must be in (0, 90) degrees")
    return -math.log(2.0) / math.log(math.cos(math.radians(semi_angle_half_power_deg)))


def _unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector")
    norm = float(np.linalg.norm(v))
    if not math.isfinite(norm) or norm == 0.0:
        raise ValueError(f"{name} must be a nonzero finite vector")
    return v / norm


@dataclass(frozen=True)
class ChannelGeometry:
    """Emitter/receiver placement and optics (desk-scale defaults)."""

    emitter_pos: tuple = (0.0, 0.0, 3.0)
    receiver_pos: tuple = (2.5, 2.5, 0.0)
    emitter_normal: tuple = (0.0, 0.0, -1.0)
    receiver_normal: tuple = (0.0, 0.0, 1.0)
    lambertian_n: float = 1.0
    receiver_area: float = 1e-4  # m^2
    fov_half_angle_deg: float = 85.0
    emitter_power: float = 3.2  # W

    def __post_init__(self):
        if self.lambertian_n < 0:
            raise ValueError("lambertian_n must be >= 0")
        if self.receiver_area <= 0:
            raise ValueError("receiver_area must be > 0")
        if not 0.0 < self.fov_half_angle_deg <= 90.0:
            raise ValueError("FOV half-angle must be in (0, 90] degrees")
        if self.emitter_power <= 0:
            raise ValueError("emitter_power must be > 0")
        _unit(self.emitter_normal, "emitter_normal")
        _unit(self.receiver_normal, "receiver_normal")


def los_gain(geom: ChannelGeometry) -> float:
    """Optical LOS gain; 0 when the incidence angle exceeds the FOV."""
    e = np.asarray(geom.emitter_pos, float)
    r = np.asarray(geom.receiver_pos, float)
    v = r - e
    d = float(np.linalg.norm(v))
    if d == 0.0:
        raise ValueError("emitter and receiver positions coincide")
    n_e = _unit(geom.emitter_normal, "emitter_normal")
    n_r = _unit(geom.receiver_normal, "receiver_normal")
    cos_phi = float(np.dot(v, n_e)) / d
    cos_psi = float(np.dot(-v, n_r)) / d
    if cos_phi <= 0.0:
        raise ValueError("receiver lies behind the emitter plane")
    psi_deg = math.degrees(math.acos(max(-1.0, min(1.0, cos_psi))))
    if psi_deg > geom.fov_half_angle_deg:
        return 0.0
    n = geom.lambertian_n
    return ((n + 1.0) / (2.0 * math.pi * d * d)
            * cos_phi ** n * geom.receiver_area * cos_psi)


@dataclass(frozen=True)
class NoiseParams:
    """Photodiode noise budget inputs.

    received_power/background_power are optical watts at the detector.
    The defaults for responsivity, bandwidth, temperature and feedback
    resistance are conventional receiver values, not measured ones; treat
    them as configuration.
    """

    received_power: float
    background_power: float = 0.0
    responsivity: float = 0.54  # A/W
    bandwidth: float = 100e6  # Hz
    temperature: float = 298.0  # K
    feedback_resistance: float = 10e3  # ohm
    electron_charge: float = ELECTRON_CHARGE
    boltzmann: float = BOLTZMANN
    thermal_over_bandwidth: bool = False

    def __post_init__(self):
        if self.received_power < 0 or self.background_power < 0:
            raise ValueError("optical powers must be >= 0")
        for name in ("responsivity", "bandwidth", "temperature",
                     "feedback_resistance", "electron_charge", "boltzmann"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


def shot_noise_std(p: NoiseParams) -> float:
    """Shot noise rms current from the photocurrent R*(P_r + P_n)."""
    current = p.responsivity * (p.received_power + p.background_power)
    return math.sqrt(2.0 * p.electron_charge * current * p.bandwidth)


def thermal_noise_std(p: NoiseParams) -> float:
    """Thermal (Johnson) noise rms current of the feedback resistance."""
    if p.thermal_over_bandwidth:
        return math.sqrt(4.0 * p.boltzmann * p.temperature
                         / (p.bandwidth * p.feedback_resistance))
    return math.sqrt(4.0 * p.boltzmann * p.temperature * p.bandwidth
                     / p.feedback_resistance)


def total_noise_std(shot: float, thermal: float) -> float:
    """Quadrature combination of the two noise amplitudes."""
    return math.hypot(shot, thermal)


def noise_variance(p: NoiseParams) -> float:
    """Combined rms noise current (the sigma of the additive noise)."""
    return total_noise_std(shot_noise_std(p), thermal_noise_std(p))


@dataclass(frozen=True)
class ChannelMode:
    """How the channel treats a waveform.

    off:       identity (loopback testing)
    physical:  flat gain los_gain * responsivity plus the computed noise
    snr_sweep: unit gain plus noise sized against the signal's AC power so
               the electrical SNR hits snr_db exactly
    """

    kind: str
    snr_db: float | None = None

    def __post_init__(self):
        if self.kind not in ("off", "physical", "snr_sweep"):
            raise ValueError("kind must be off, physical or snr_sweep")
        if self.kind == "snr_sweep":
            if self.snr_db is None or not math.isfinite(self.snr_db):
                raise ValueError("snr_sweep requires a finite target SNR")


def apply_channel(signal: TimeSignal, mode: ChannelMode,
                  geometry: ChannelGeometry | None = None,
                  noise: NoiseParams | None = None,
                  rng_seed: int = 0,
                  gain_scale: float = 1.0) -> TimeSignal:
    """Propagate a waveform; deterministic for a fixed rng_seed.

    Noise comes from numpy's seeded PCG64 generator. gain_scale multiplies
    the physical-mode gain (optical filter gain, unity by default).
    """
    x = np.asarray(signal.samples, float)
    if x.size == 0:
        raise ValueError("signal is empty")
    if mode.kind == "off":
        return TimeSignal(x.copy(), dc_bias=signal.dc_bias,
                          n_clipped=signal.n_clipped)
    rng = np.random.default_rng(rng_seed)
    if mode.kind == "physical":
        if geometry is None or noise is None:
            raise ValueError("physical mode needs geometry and noise params")
        gain = los_gain(geometry) * noise.responsivity * gain_scale
        sigma = noise_variance(noise)
        y = gain * x
        if sigma > 0:
            y = y + rng.normal(0.0, sigma, x.size)
        return TimeSignal(y, dc_bias=signal.dc_bias * gain,
                          n_clipped=signal.n_clipped)
    # snr_sweep
    ac = x - x.mean()
    p_ac = float(np.mean(ac * ac))
    sigma = math.sqrt(p_ac / 10.0 ** (mode.snr_db / 10.0))
    y = x.copy()
    if sigma > 0:
        y += rng.normal(0.0, sigma, x.size)
    return TimeSignal(y, dc_bias=signal.dc_bias, n_clipped=signal.n_clipped)
