"""Gray-coded bit/symbol mapping for BPSK, QPSK, 8PSK and 16QAM.

All constellations have unit average symbol energy and Gray labeling
(nearest neighbours differ in exactly one bit). The tables below are
normative for every fixture in this repository; see README for the full
bit-to-point listing.

The 8PSK constellation is deliberately offset by pi/8 (no point on either
axis) and its Gray cycle is rotated by one position. With that choice the
three reflections a wrong-key descrambler can induce (negate I, negate Q,
negate both) each flip 2 of the 3 bits on average, so blind descrambling
yields no net bit-level information. An axis-aligned 8PSK would leak
(average error 5/12 instead of 1/2).
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache

import numpy as np

_DEMAP_CHUNK = 1 << 17


def _gray(k: int) -> int:
    return k ^ (k >> 1)


def _qpsk_points() -> np.ndarray:
    # bit 0 -> I sign, bit 1 -> Q sign; 0 maps to +
    pts = np.empty(4, np.complex128)
    for w in range(4):
        i = 1.0 if (w >> 1) == 0 else -1.0
        q = 1.0 if (w & 1) == 0 else -1.0
        pts[w] = (i + 1j * q) / np.sqrt(2.0)
    return pts


def _psk8_points() -> np.ndarray:
    # position k sits at angle pi*(2k+1)/8 and carries codeword gray(k+1)
    pts = np.empty(8, np.complex128)
    for k in range(8):
        pts[_gray((k + 1) % 8)] = np.exp(1j * np.pi * (2 * k + 1) / 8.0)
    return pts


_PAM4 = {0b00: -3.0, 0b01: -1.0, 0b11: 1.0, 0b10: 3.0}


def _qam16_points() -> np.ndarray:
    # bits (b0 b1) select I, (b2 b3) select Q, each via the 4-PAM Gray map
    pts = np.empty(16, np.complex128)
    for w in range(16):
        i = _PAM4[w >> 2]
        q = _PAM4[w & 3]
        pts[w] = (i + 1j * q) / np.sqrt(10.0)
    return pts


class Modulation(Enum):
    BPSK = "bpsk"
    QPSK = "qpsk"
    PSK8 = "8psk"
    QAM16 = "16qam"

    @property
    def bits_per_symbol(self) -> int:
        return {"bpsk": 1, "qpsk": 2, "8psk": 3, "16qam": 4}[self.value]

    @property
    def points(self) -> np.ndarray:
        """Constellation indexed by codeword (natural binary, MSB first)."""
        return _points(self).copy()

    @classmethod
    def parse(cls, name: str) -> "Modulation":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown modulation {name!r} (expected one of {valid})")


@lru_cache(maxsize=None)
def _points(scheme: Modulation) -> np.ndarray:
    if scheme is Modulation.BPSK:
        return np.array([1.0 + 0j, -1.0 + 0j])
    if scheme is Modulation.QPSK:
        return _qpsk_points()
    if scheme is Modulation.PSK8:
        return _psk8_points()
    return _qam16_points()


def map_bits(bits, scheme: Modulation) -> np.ndarray:
    """Map a 0/1 sequence to constellation symbols (complex array).

    The bit count must divide evenly into symbols.
    """
    bits = np.asarray(bits)
    bps = scheme.bits_per_symbol
    if bits.ndim != 1:
        raise ValueError("bits must be one-dimensional")
    if bits.size % bps != 0:
        raise ValueError(
            f"bit count {bits.size} not divisible by {bps} bits/symbol")
    if bits.size and not np.isin(bits, (0, 1)).all():
        raise ValueError("bits must contain only 0 and 1")
    weights = 1 << np.arange(bps - 1, -1, -1)
    words = (bits.reshape(-1, bps).astype(np.int64) * weights).sum(axis=1)
    return _points(scheme)[words]


def demap_symbols(block, scheme: Modulation) -> np.ndarray:
    """Hard-decision nearest-point demapping back to bits (uint8 array).

    Ties are broken toward the lower codeword index (argmin convention),
    which makes boundary decisions deterministic.
    """
    block = np.asarray(block, np.complex128)
    pts = _points(scheme)
    bps = scheme.bits_per_symbol
    words = np.empty(block.size, np.int64)
    for start in range(0, block.size, _DEMAP_CHUNK):
        z = block[start:start + _DEMAP_CHUNK]
        d = (z.real[:, None] - pts.real) ** 2 + (z.imag[:, None] - pts.imag) ** 2
        words[start:start + _DEMAP_CHUNK] = d.argmin(axis=1)
    shifts = np.arange(bps - 1, -1, -1)
    return ((words[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)
