"""Keyed constellation scrambling by per-symbol sign flips.

Each symbol's real part is multiplied by the sign of one keystream
dimension and its imaginary part by the sign of another (sgn(0) := +1 so
the operation is total and never annihilates a symbol). Every stage is an
involution, so descrambling reapplies the identical operation with the
receiver's synchronized keystream. Because the synchronized slave runs at
y = alpha*x with alpha > 0, its signs match the master's exactly; any
positively scaled copy of the key descrambles identically.

The six-stage cascade applies all unordered dimension pairs in the fixed
order (1,2),(1,3),(1,4),(2,3),(2,4),(3,4); one map iteration keys all six
stages of a symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .henon import HenonParams, trajectory

CASCADE_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


@dataclass(frozen=True)
class DimensionPair:
    """Pair of distinct map dimensions (1..4) keying one scrambler stage."""

    a_dim: int
    b_dim: int

    def __post_init__(self):
        if self.a_dim not in (1, 2, 3, 4) or self.b_dim not in (1, 2, 3, 4):
            raise ValueError("dimensions must be in 1..4")
        if self.a_dim == self.b_dim:
            raise ValueError("dimensions must be distinct")


@dataclass(frozen=True)
class KeyStream:
    """Per-symbol map states, one row per constellation symbol."""

    states: np.ndarray

    def __post_init__(self):
        states = np.asarray(self.states, float)
        if states.ndim != 2 or states.shape[1] != 4:
            raise ValueError("key stream must be an (n, 4) array of states")
        object.__setattr__(self, "states", states)

    def __len__(self) -> int:
        return len(self.states)

    @classmethod
    def from_map(cls, seed, params: HenonParams, n: int, skip: int = 0) -> "KeyStream":
        return cls(trajectory(seed, params, n, skip))

    def scaled(self, c: float) -> "KeyStream":
        return KeyStream(self.states * c)


def _signs(key: KeyStream, n: int) -> np.ndarray:
    # sgn(0) := +1
    return np.where(key.states[:n] >= 0.0, 1.0, -1.0)


def scramble(block, key: KeyStream, pair: DimensionPair) -> np.ndarray:
    """One scrambler stage: flip Re by sgn(x_a), Im by sgn(x_b) per symbol."""
    block = np.asarray(block, np.complex128)
    if len(key) < block.size:
        raise ValueError(
            f"key stream underrun: {len(key)} states for {block.size} symbols")
    s = _signs(key, block.size)
    return block.real * s[:, pair.a_dim - 1] + 1j * (block.imag * s[:, pair.b_dim - 1])


def cascade_scramble(block, key: KeyStream) -> np.ndarray:
    """Six scrambler stages over all dimension pairs, same key per symbol."""
    out = np.asarray(block, np.complex128)
    for a_dim, b_dim in CASCADE_PAIRS:
        out = scramble(out, key, DimensionPair(a_dim, b_dim))
    return out


def descramble(block, key: KeyStream, mode) -> np.ndarray:
    """Invert scrambling with the receiver's keystream.

    mode is either a DimensionPair (single stage) or the string "cascade".
    Exactness only requires matching signs, so a synchronized slave key
    (y = alpha*x, alpha > 0) recovers the block bit for bit.
    """
    if mode == "cascade":
        return cascade_scramble(block, key)
    if isinstance(mode, DimensionPair):
        return scramble(block, key, mode)
    raise ValueError(f"mode must be a DimensionPair or 'cascade', got {mode!r}")
