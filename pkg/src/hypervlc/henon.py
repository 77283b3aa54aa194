"""4D Henon map used as the keystream generator on both ends of the link.

The map is a delay line driven by one quadratic recurrence:

    x1(k+1) = a - x3(k)^2 - b*x4(k) + u(k)
    x2(k+1) = x1(k)
    x3(k+1) = x2(k)
    x4(k+1) = x3(k)

At a = 1.76, b = 0.1 the free-running map (u = 0) is hyperchaotic and its
trajectories stay inside (-2, 2)^4; that range is an empirical property of
the attractor, not an enforced invariant. The transmitter runs the map
free; the receiver injects the synchronization controller output as u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

HYPERCHAOTIC_A = 1.76
HYPERCHAOTIC_B = 0.1


class DivergenceError(RuntimeError):
    """Raised when the map state stops being finite (numerical blow-up).

    ``iteration`` is the 1-based index of the offending step when known.
    """

    def __init__(self, message: str, iteration: int | None = None):
        super().__init__(message)
        self.iteration = iteration


@dataclass(frozen=True)
class HenonParams:
    """Map coefficients. Defaults are the hyperchaotic operating point."""

    a: float = HYPERCHAOTIC_A
    b: float = HYPERCHAOTIC_B

    @property
    def is_hyperchaotic_regime(self) -> bool:
        """True for the documented hyperchaotic parameter pair."""
        return self.a == HYPERCHAOTIC_A and self.b == HYPERCHAOTIC_B


class HenonState(NamedTuple):
    x1: float
    x2: float
    x3: float
    x4: float


def henon_step(state, params: HenonParams, control: float = 0.0) -> HenonState:
    """Advance the map one step; ``control`` is added to the first equation.

    The transmitter (master) uses control = 0; the synchronized receiver
    (slave) passes the sliding-mode controller output.
    """
    x1, x2, x3, x4 = state
    new_x1 = params.a - x3 * x3 - params.b * x4 + control
    if not math.isfinite(new_x1):
        raise DivergenceError("henon_step produced a non-finite state")
    return HenonState(new_x1, x1, x2, x3)


def _delay_series(seed, params: HenonParams, n_steps: int) -> list[float]:
    """Scalar x1 history [x4(0), x3(0), x2(0), x1(0), x1(1), ..., x1(n_steps)].

    Because x2..x4 are delayed copies of x1, the full state at step k is
    four consecutive entries of this list. Hot path: keep the loop free of
    attribute lookups and array writes.
    """
    a = params.a
    b = params.b
    x1, x2, x3, x4 = seed
    s = [x4, x3, x2, x1]
    append = s.append
    for _ in range(n_steps):
        append(a - s[-3] * s[-3] - b * s[-4])
    return s


def _check_finite(series) -> None:
    arr = np.asarray(series)
    bad = ~np.isfinite(arr)
    if bad.any():
        # raw index 3 is x1(0), so raw index i >= 4 is the value produced
        # by map application number i - 3
        raw = int(np.argmax(bad))
        raise DivergenceError(
            f"map diverged to a non-finite value at iteration {raw - 3}",
            iteration=raw - 3,
        )


def trajectory(seed, params: HenonParams, n: int, skip: int = 0) -> np.ndarray:
    """States after steps skip+1 .. skip+n as an (n, 4) float array.

    The first ``skip`` iterations are a discarded transient. Bit-identical
    to repeated henon_step with control = 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if skip < 0:
        raise ValueError("skip must be >= 0")
    s = _delay_series(seed, params, skip + n)
    _check_finite(s)
    arr = np.asarray(s)
    return np.column_stack([
        arr[4 + skip: 4 + skip + n],
        arr[3 + skip: 3 + skip + n],
        arr[2 + skip: 2 + skip + n],
        arr[1 + skip: 1 + skip + n],
    ])


def generate_sequence(seed, params: HenonParams, n: int, skip: int = 0) -> list[HenonState]:
    """Like trajectory() but as a list of HenonState tuples."""
    return [HenonState(*row) for row in trajectory(seed, params, n, skip)]
