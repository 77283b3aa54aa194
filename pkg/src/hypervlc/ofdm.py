"""DCO-OFDM modem: hermitian spectrum, IFFT/FFT, cyclic prefix, DC bias.

The frequency block [0, X_1..X_m, 0, conj(X_m)..conj(X_1)] (m = n_fft/2 - 1
data subcarriers) makes the inverse transform real so the waveform can
drive an LED. The inverse transform uses a 1/n_data normalization (and the
forward transform its inverse), the last cp_len body samples are prepended
as a cyclic prefix, and a DC bias of rms * 10^(dc_bias_db/20) shifts the
waveform up before negative samples are clipped to zero.

Channel estimation is least squares against one known pilot block; the
equalizer divides per subcarrier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OfdmConfig:
    n_fft: int = 128
    cp_len: int = 16
    dc_bias_db: float = 7.0

    def __post_init__(self):
        n = self.n_fft
        if n < 4 or (n & (n - 1)) != 0:
            raise ValueError("n_fft must be a power of two >= 4")
        if not 0 <= self.cp_len < n:
            raise ValueError("cp_len must satisfy 0 <= cp_len < n_fft")

    @property
    def n_data(self) -> int:
        return self.n_fft // 2 - 1

    @property
    def frame_len(self) -> int:
        return self.n_fft + self.cp_len


@dataclass
class TimeSignal:
    """Real drive waveform plus bookkeeping.

    dc_bias is the additive bias the modulator applied (scaled by the
    channel gain downstream); n_clipped counts samples clipped at zero.
    Samples are non-negative as transmitted; channel noise may push the
    received copy below zero.
    """

    samples: np.ndarray
    dc_bias: float = 0.0
    n_clipped: int = 0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, float)


@dataclass(frozen=True)
class ChannelEstimate:
    """Per-subcarrier complex gains from the pilot block."""

    gains: np.ndarray

    def __post_init__(self):
        gains = np.asarray(self.gains, np.complex128)
        if not np.isfinite(gains).all():
            raise ValueError("channel estimate contains non-finite gains")
        object.__setattr__(self, "gains", gains)

    @property
    def zero_mask(self) -> np.ndarray:
        return self.gains == 0


def _hermitian_extend_raw(block: np.ndarray) -> np.ndarray:
    """[0, X_1..X_m, 0, conj(X_m)..conj(X_1)] for any m >= 1."""
    block = np.asarray(block, np.complex128)
    m = block.size
    out = np.zeros(2 * m + 2, np.complex128)
    out[1:m + 1] = block
    out[m + 2:] = np.conj(block[::-1])
    return out


def hermitian_extend(block, cfg: OfdmConfig) -> np.ndarray:
    """Extend an n_data block to the full conjugate-symmetric spectrum."""
    block = np.asarray(block, np.complex128)
    if block.size != cfg.n_data:
        raise ValueError(
            f"block length {block.size} != n_data {cfg.n_data}")
    return _hermitian_extend_raw(block)


def _real_time_samples(spectrum: np.ndarray, cfg: OfdmConfig) -> np.ndarray:
    """Inverse transform with 1/n_data normalization; must come out real."""
    time = np.fft.ifft(spectrum, axis=-1) * (cfg.n_fft / cfg.n_data)
    scale = np.abs(time).max()
    if scale > 0 and np.abs(time.imag).max() > 1e-9 * scale:
        raise ValueError("spectrum is not hermitian-symmetric")
    return time.real


def _add_cp_bias_clip(time: np.ndarray, cfg: OfdmConfig) -> TimeSignal:
    """CP + DC bias + zero clipping; time may be (n_fft,) or (F, n_fft)."""
    cp = cfg.cp_len
    if cp:
        with_cp = np.concatenate([time[..., -cp:], time], axis=-1)
    else:
        with_cp = time
    rms = float(np.sqrt(np.mean(time ** 2)))
    bias = rms * 10.0 ** (cfg.dc_bias_db / 20.0)
    out = with_cp.reshape(-1) + bias
    n_clipped = int(np.count_nonzero(out < 0))
    np.clip(out, 0.0, None, out=out)
    return TimeSignal(out, dc_bias=bias, n_clipped=n_clipped)


def ofdm_modulate(block, cfg: OfdmConfig) -> TimeSignal:
    """Hermitian-extended block -> biased, clipped real waveform with CP."""
    block = np.asarray(block, np.complex128)
    if block.size != cfg.n_fft:
        raise ValueError(f"block length {block.size} != n_fft {cfg.n_fft}")
    time = _real_time_samples(block, cfg)
    return _add_cp_bias_clip(time, cfg)


def ofdm_demodulate(signal: TimeSignal, cfg: OfdmConfig) -> np.ndarray:
    """Strip CP and bias, forward transform, return data subcarriers 1..m."""
    samples = np.asarray(signal.samples, float)
    if samples.size != cfg.frame_len:
        raise ValueError(
            f"frame length {samples.size} != n_fft + cp_len {cfg.frame_len}")
    body = samples[cfg.cp_len:] - signal.dc_bias
    spectrum = np.fft.fft(body) * (cfg.n_data / cfg.n_fft)
    return spectrum[1:1 + cfg.n_data]


def modulate_frames(blocks: np.ndarray, cfg: OfdmConfig) -> TimeSignal:
    """Batch path for an (F, n_data) symbol matrix -> one concatenated burst.

    The DC bias is sized from the whole-burst rms (one scalar), which keeps
    the burst a single TimeSignal; the per-frame path uses its own rms.
    """
    blocks = np.asarray(blocks, np.complex128)
    if blocks.ndim != 2 or blocks.shape[1] != cfg.n_data:
        raise ValueError(f"blocks must be (frames, {cfg.n_data})")
    f = blocks.shape[0]
    m = cfg.n_data
    spectrum = np.zeros((f, cfg.n_fft), np.complex128)
    spectrum[:, 1:m + 1] = blocks
    spectrum[:, m + 2:] = np.conj(blocks[:, ::-1])
    time = _real_time_samples(spectrum, cfg)
    return _add_cp_bias_clip(time, cfg)


def demodulate_frames(signal: TimeSignal, cfg: OfdmConfig) -> np.ndarray:
    """Inverse of modulate_frames: burst -> (F, n_data) symbol matrix."""
    samples = np.asarray(signal.samples, float)
    if samples.size % cfg.frame_len != 0:
        raise ValueError(
            f"burst length {samples.size} not a multiple of {cfg.frame_len}")
    frames = samples.reshape(-1, cfg.frame_len)
    body = frames[:, cfg.cp_len:] - signal.dc_bias
    spectrum = np.fft.fft(body, axis=1) * (cfg.n_data / cfg.n_fft)
    return spectrum[:, 1:1 + cfg.n_data]


def ls_channel_estimate(rx_pilot, tx_pilot) -> ChannelEstimate:
    """Least-squares per-subcarrier gains: rx/tx on a known pilot block."""
    rx = np.asarray(rx_pilot, np.complex128)
    tx = np.asarray(tx_pilot, np.complex128)
    if rx.size != tx.size:
        raise ValueError("pilot length mismatch")
    if (tx == 0).any():
        raise ValueError("tx pilot contains zero entries")
    return ChannelEstimate(rx / tx)


def equalize(block, est: ChannelEstimate) -> np.ndarray:
    """Divide out the estimated per-subcarrier gains."""
    block = np.asarray(block, np.complex128)
    gains = est.gains
    if block.shape[-1] != gains.size:
        raise ValueError("block/estimate length mismatch")
    if est.zero_mask.any():
        raise ValueError("cannot equalize zero-gain subcarriers")
    return block / gains
