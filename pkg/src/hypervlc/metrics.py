"""Security and fidelity metrics: BER, leakage, histograms, KS test."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LeakageResult:
    """Measured BER and the bit-level information an observer extracts.

    For a binary symmetric view with balanced payloads the per-bit mutual
    information is 1 - H_b(ber), in [0, 1] bits/bit.
    """

    ber: float
    leakage: float

    @classmethod
    def from_ber(cls, ber: float) -> "LeakageResult":
        return cls(ber, information_leakage(ber))


@dataclass(frozen=True)
class KsResult:
    statistic: float
    p_value: float


def bit_error_rate(tx, rx) -> float:
    """Fraction of mismatched positions between two equal-length sequences."""
    tx = np.asarray(tx)
    rx = np.asarray(rx)
    if tx.size == 0 or tx.size != rx.size:
        raise ValueError("sequences must have equal nonzero length")
    return float(np.count_nonzero(tx != rx)) / tx.size


def information_leakage(p: float) -> float:
    """1 + p*log2(p) + (1-p)*log2(1-p), with the 0*log(0) limit applied."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("probability must be in [0, 1]")
    h = 0.0
    if 0.0 < p < 1.0:
        h = -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)
    return 1.0 - h


def histogram(samples, bins: int, value_range) -> np.ndarray:
    """Fixed-width binning; out-of-range samples land in the edge bins."""
    samples = np.asarray(samples, float).reshape(-1)
    if samples.size == 0:
        raise ValueError("samples must be nonempty")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    lo, hi = float(value_range[0]), float(value_range[1])
    if not hi > lo:
        raise ValueError("range must satisfy hi > lo")
    width = (hi - lo) / bins
    idx = np.floor((samples - lo) / width).astype(np.int64)
    np.clip(idx, 0, bins - 1, out=idx)
    return np.bincount(idx, minlength=bins)


def _kolmogorov_sf(lam: float) -> float:
    """Asymptotic Kolmogorov survival function Q(lam) = 2*sum (-1)^(j-1) e^(-2 j^2 lam^2).

    Returns 1.0 when the alternating series cannot resolve (tiny lam).
    """
    if lam < 1e-8:
        return 1.0
    a2 = -2.0 * lam * lam
    total = 0.0
    fac = 2.0
    prev = 0.0
    for j in range(1, 101):
        term = fac * math.exp(a2 * j * j)
        total += term
        if abs(term) <= 1e-3 * prev or abs(term) <= 1e-8 * abs(total):
            return min(max(total, 0.0), 1.0)
        fac = -fac
        prev = abs(term)
    return 1.0


def ks_two_sample(a, b) -> KsResult:
    """Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.

    D is the sup distance between the empirical CDFs over the pooled
    sample; the p-value uses effective size n_a*n_b/(n_a+n_b), so it is
    meaningful for the image-scale samples this repository compares (no
    small-sample enumeration).
    """
    a = np.sort(np.asarray(a, float).reshape(-1))
    b = np.sort(np.asarray(b, float).reshape(-1))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    pooled = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, pooled, side="right") / a.size
    cdf_b = np.searchsorted(b, pooled, side="right") / b.size
    d = float(np.max(np.abs(cdf_a - cdf_b)))
    n_eff = a.size * b.size / (a.size + b.size)
    p = _kolmogorov_sf(math.sqrt(n_eff) * d)
    return KsResult(d, p)
