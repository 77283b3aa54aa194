"""End-to-end link assembly: sweeps, image transmission, scaling bench.

One link run walks the whole chain:

    bits -> map -> scramble (master keystream) -> hermitian -> IFFT -> CP
         -> DC bias/clip -> channel -> CP removal -> FFT -> LS estimate
         -> equalize -> descramble (receiver keystream) -> demap -> BER

A legitimate receiver runs the sliding-mode controller for sync_preamble
iterations before the payload and keeps it active throughout, so its
keystream is the controlled slave trajectory. An eavesdropper runs the
same demodulator but descrambles with a free-running map from its own
seed; it never touches the master seed or the controller parameters.

Every stochastic quantity comes from numpy generators seeded by fixed
arithmetic on the configured root seed, so all CSV and image artifacts
are pure functions of (config, rng_seed). The scaling bench is the one
exception: it reports wall-clock timings.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .config import SimConfig, align_bits
from .henon import HenonParams
from .mapping import Modulation, demap_symbols, map_bits
from .metrics import bit_error_rate, histogram, information_leakage, ks_two_sample, KsResult
from .ofdm import (OfdmConfig, TimeSignal, demodulate_frames, equalize,
                   ls_channel_estimate, modulate_frames)
from .scrambler import DimensionPair, KeyStream, cascade_scramble, descramble, scramble
from .smc_sync import run_synchronization, track_master
from .vlc_channel import ChannelMode, apply_channel

CSV_HEADER = "snr_db,scheme,scrambler_mode,role,ber,leakage,frames,seed"

# fixed, public pilot seed: the pilot block is part of the air interface
_PILOT_SEED = 0x0F_1A7_5EED


@dataclass
class LinkReport:
    """Outcome of one link run."""

    ber: float
    leakage: float
    n_bits: int
    n_frames: int
    snr_db: float | None
    role: str
    scheme: str
    scrambler_mode: str
    seed: int
    sync_converged: bool | None = None
    sync_iterations: int | None = None
    sync_final_error: float | None = None
    n_clipped: int = 0
    rx_bits: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class SweepRecord:
    snr_db: float
    scheme: str
    scrambler_mode: str
    role: str
    ber: float
    leakage: float
    frames: int
    seed: int


@dataclass
class ImageRunResult:
    recovered: np.ndarray
    report: LinkReport
    tx_histogram: np.ndarray
    rx_histogram: np.ndarray
    ks: KsResult


@dataclass(frozen=True)
class BenchRecord:
    n_fft: int
    mode: str
    frames: int
    seconds_per_frame: float


def derive_seed(root: int, index: int, role: str) -> int:
    """Per-point seed from the root by fixed arithmetic (documented)."""
    role_bit = 1 if role == "eavesdropper" else 0
    return (root * 1_000_003 + 8191 * index + role_bit + 1) % (1 << 63)


def _noise_seed(seed: int) -> int:
    # keep the channel noise stream independent of the payload-bit stream
    return (seed ^ 0x6E6F697365) % (1 << 63)


def pilot_block(cfg_ofdm: OfdmConfig) -> np.ndarray:
    """Known QPSK pilot symbols for LS estimation (fixed public seed)."""
    rng = np.random.default_rng(_PILOT_SEED)
    bits = rng.integers(0, 2, 2 * cfg_ofdm.n_data, dtype=np.uint8)
    return map_bits(bits, Modulation.QPSK)


def _scramble_payload(symbols: np.ndarray, key: KeyStream, cfg: SimConfig) -> np.ndarray:
    if cfg.scrambler_mode == "single":
        return scramble(symbols, key, cfg.scrambler_pair)
    return cascade_scramble(symbols, key)


def _descramble_payload(symbols: np.ndarray, key: KeyStream, cfg: SimConfig) -> np.ndarray:
    mode = cfg.scrambler_pair if cfg.scrambler_mode == "single" else "cascade"
    return descramble(symbols, key, mode)


def run_link_once(cfg: SimConfig, snr_db: float | None = None,
                  payload_bits: np.ndarray | None = None,
                  keep_payload: bool = False) -> LinkReport:
    """Simulate one point of the link and report BER/leakage/diagnostics.

    payload_bits defaults to cfg.bits_per_point uniform random bits (so
    leakage's balanced-payload assumption holds); a caller-supplied
    payload must already be a whole number of OFDM frames.
    """
    scheme = cfg.scheme
    bps = scheme.bits_per_symbol
    rng = np.random.default_rng(cfg.rng_seed)
    if payload_bits is None:
        bits = rng.integers(0, 2, cfg.bits_per_point, dtype=np.uint8)
    else:
        bits = np.asarray(payload_bits, np.uint8)
        if bits.size == 0 or bits.size % cfg.frame_bits != 0:
            raise ValueError("payload must be a nonzero multiple of frame_bits")
    n_sym = bits.size // bps
    n_frames = n_sym // cfg.ofdm.n_data

    symbols = map_bits(bits, scheme)

    scrambling = cfg.scrambler_mode != "off"
    n_pre = cfg.sync_preamble
    if scrambling:
        master_key = KeyStream.from_map(cfg.master_seed, cfg.henon, n_sym, skip=n_pre)
        tx_symbols = _scramble_payload(symbols, master_key, cfg)
    else:
        tx_symbols = symbols

    blocks = np.vstack([pilot_block(cfg.ofdm)[None, :],
                        tx_symbols.reshape(n_frames, cfg.ofdm.n_data)])
    tx = modulate_frames(blocks, cfg.ofdm)

    mode = ChannelMode(cfg.channel_kind,
                       snr_db if cfg.channel_kind == "snr_sweep" else None)
    if cfg.channel_kind == "physical":
        # drive the LED at the configured mean optical power
        mean = float(tx.samples.mean())
        scale = cfg.geometry.emitter_power / mean if mean > 0 else 1.0
        tx = TimeSignal(tx.samples * scale, dc_bias=tx.dc_bias * scale,
                        n_clipped=tx.n_clipped)
    rx = apply_channel(tx, mode, geometry=cfg.geometry, noise=cfg.noise,
                       rng_seed=_noise_seed(cfg.rng_seed),
                       gain_scale=cfg.optical_filter_gain)

    rx_blocks = demodulate_frames(rx, cfg.ofdm)
    est = ls_channel_estimate(rx_blocks[0], pilot_block(cfg.ofdm))
    data = equalize(rx_blocks[1:], est).reshape(-1)

    sync_converged = None
    sync_iterations = None
    sync_final = None
    if scrambling:
        if cfg.role == "legitimate":
            slave_states, err_sup = track_master(
                cfg.master_seed, cfg.slave_seed, cfg.henon, cfg.smc,
                n_pre + n_sym)
            within = np.nonzero(err_sup[:n_pre + 1] <= cfg.sync_tol)[0]
            sync_converged = within.size > 0
            sync_iterations = int(within[0]) if sync_converged else None
            sync_final = float(err_sup[-1])
            rx_key = KeyStream(slave_states[n_pre + 1:])
        else:
            # eavesdropper: free-running map from its own seed; no access
            # to the master seed or controller parameters
            rx_key = KeyStream.from_map(cfg.slave_seed, cfg.henon, n_sym, skip=n_pre)
        data = _descramble_payload(data, rx_key, cfg)

    rx_bits = demap_symbols(data, scheme)
    ber = bit_error_rate(bits, rx_bits)
    return LinkReport(
        ber=ber,
        leakage=information_leakage(ber),
        n_bits=bits.size,
        n_frames=n_frames,
        snr_db=snr_db,
        role=cfg.role,
        scheme=scheme.value,
        scrambler_mode=cfg.scrambler_mode,
        seed=cfg.rng_seed,
        sync_converged=sync_converged,
        sync_iterations=sync_iterations,
        sync_final_error=sync_final,
        n_clipped=rx.n_clipped,
        rx_bits=rx_bits if keep_payload else None,
    )


def run_ber_sweep(cfg: SimConfig, roles=("legitimate", "eavesdropper")) -> list[SweepRecord]:
    """BER/leakage over the SNR grid, one record per (snr, role).

    Points use independent seeds derived from cfg.rng_seed; rows come out
    ordered by grid index, then role.
    """
    if cfg.channel_kind != "snr_sweep":
        raise ValueError("sweeps require channel_mode=snr_sweep")
    records = []
    for idx, snr in enumerate(cfg.snr_grid_db):
        for role in roles:
            seed = derive_seed(cfg.rng_seed, idx, role)
            point_cfg = cfg.replace(role=role, rng_seed=seed)
            report = run_link_once(point_cfg, snr_db=snr)
            records.append(SweepRecord(
                snr_db=snr, scheme=report.scheme,
                scrambler_mode=report.scrambler_mode, role=role,
                ber=report.ber, leakage=report.leakage,
                frames=report.n_frames, seed=seed))
    return records


def run_leakage_sweep(cfg: SimConfig, roles=("legitimate", "eavesdropper")) -> list[SweepRecord]:
    """Leakage view of the same sweep (leakage is derived from BER)."""
    return run_ber_sweep(cfg, roles=roles)


def _fmt(x: float) -> str:
    return format(x, ".12g")


def records_to_csv(records) -> str:
    """Fixed schema, '.' decimals, LF endings; byte-stable for a seed."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([
            _fmt(r.snr_db), r.scheme, r.scrambler_mode, r.role,
            _fmt(r.ber), _fmt(r.leakage), str(r.frames), str(r.seed)]))
    return "\n".join(lines) + "\n"


def transmit_image(image: np.ndarray, cfg: SimConfig,
                   snr_db: float | None = None) -> ImageRunResult:
    """Send an 8-bit grayscale raster through the link and compare.

    Pixels serialize MSB-first; the payload is zero-padded to a whole
    number of OFDM frames. Histograms use 256 unit bins; the KS test
    compares raw pixel samples of the original and recovered images.
    """
    img = np.asarray(image)
    if img.ndim != 2 or img.dtype != np.uint8:
        raise ValueError("image must be a 2-D uint8 raster")
    bits = np.unpackbits(img.reshape(-1))
    padded = align_bits(bits.size, cfg.frame_bits)
    payload = np.zeros(padded, np.uint8)
    payload[:bits.size] = bits
    report = run_link_once(cfg, snr_db=snr_db, payload_bits=payload,
                           keep_payload=True)
    rx_bits = report.rx_bits[:bits.size]
    recovered = np.packbits(rx_bits).reshape(img.shape)
    report.rx_bits = None
    tx_hist = histogram(img.reshape(-1), 256, (0, 256))
    rx_hist = histogram(recovered.reshape(-1), 256, (0, 256))
    ks = ks_two_sample(img.reshape(-1), recovered.reshape(-1))
    return ImageRunResult(recovered, report, tx_hist, rx_hist, ks)


def sync_demo_records(cfg: SimConfig, tol: float | None = None,
                      max_iter: int = 2_000):
    """Error history of one synchronization run, ready for CSV emission."""
    return run_synchronization(
        cfg.master_seed, cfg.slave_seed, cfg.henon, cfg.smc,
        tol=cfg.sync_tol if tol is None else tol, max_iter=max_iter)


def sync_history_csv(report) -> str:
    lines = ["iteration,e1,e2,e3,e4,sup_norm"]
    for k, e in enumerate(report.error_history):
        lines.append(",".join([str(k), _fmt(e.e1), _fmt(e.e2), _fmt(e.e3),
                               _fmt(e.e4), _fmt(e.sup_norm)]))
    return "\n".join(lines) + "\n"


def bench_scaling(n_ffts=(64, 128, 256, 512, 1024, 2048, 4096),
                  modes=("single", "cascade"),
                  total_symbols: int = 1 << 16,
                  repeats: int = 3,
                  rng_seed: int = 0) -> list[BenchRecord]:
    """Per-frame wall time of keystream + scrambling + OFDM modulation.

    The timed region covers the chaotic keystream generation, the sign
    scrambling (one stage or the six-stage cascade) and the hermitian/
    IFFT/CP/bias path; the per-frame figure is the min over repeats of
    elapsed/frames. Timings are wall clock and therefore not covered by
    the byte-determinism guarantee of the other artifacts.
    """
    if total_symbols < 1:
        raise ValueError("total_symbols must be >= 1")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    rng = np.random.default_rng(rng_seed)
    records = []
    for n_fft in n_ffts:
        ofdm_cfg = OfdmConfig(n_fft=n_fft, cp_len=max(1, n_fft // 8))
        n_data = ofdm_cfg.n_data
        frames = max(1, total_symbols // n_data)
        n_sym = frames * n_data
        bits = rng.integers(0, 2, n_sym * 4, dtype=np.uint8)
        symbols = map_bits(bits, Modulation.QAM16)
        seed = (0.1, -0.1, 0.1, 0.1)
        params = HenonParams()
        for mode in modes:
            best = float("inf")
            for _ in range(repeats):
                t0 = time.perf_counter()
                key = KeyStream.from_map(seed, params, n_sym)
                if mode == "single":
                    scrambled = scramble(symbols, key, DimensionPair(1, 2))
                else:
                    scrambled = cascade_scramble(symbols, key)
                modulate_frames(scrambled.reshape(frames, n_data), ofdm_cfg)
                elapsed = time.perf_counter() - t0
                best = min(best, elapsed)
            records.append(BenchRecord(n_fft, mode, frames, best / frames))
    return records


def bench_to_csv(records) -> str:
    lines = ["n_fft,mode,frames,seconds_per_frame"]
    for r in records:
        lines.append(",".join([str(r.n_fft), r.mode, str(r.frames),
                               _fmt(r.seconds_per_frame)]))
    return "\n".join(lines) + "\n"
