"""Discrete sliding-mode controller for projective map synchronization.

The receiver (slave) map tracks the transmitter (master) map up to a
scaling factor alpha: the error e(k) = y(k) - alpha*x(k) is driven to zero
by injecting a control u(k) into the slave's first state equation. Once on
the manifold y = alpha*x (alpha > 0), the slave's component signs match
the master's, which is all the descrambler needs.

The controller observes the master state directly (ideal key/pilot
channel). Since x2..x4 are delayed copies of x1, sharing the scalar x1
stream is equivalent; this abstraction stands in for whatever side channel
carries the synchronization reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .henon import (DivergenceError, HenonParams, HenonState, henon_step,
                    _delay_series)


@dataclass(frozen=True)
class SmcParams:
    """Controller constants. Defaults are the reference operating point.

    equilibrium_offset selects the additive constant in the control law:
    True uses (alpha - 1)*a, which makes e = 0 an equilibrium for every
    alpha; False uses alpha - a, kept only for comparison (it preserves
    the synchronized manifold only when a = 1).
    """

    T: float = 1.0
    eps1: float = 0.1
    eps2: float = 0.1
    q: float = 0.7
    beta: float = 0.9
    gamma: float = 1.2
    c1: float = 0.001
    c2: float = 0.0
    c3: float = 0.0
    alpha: float = 0.8
    equilibrium_offset: bool = True

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("T must be > 0")
        if self.eps1 < 0:
            raise ValueError("eps1 must be >= 0")
        if self.eps2 < 0:
            raise ValueError("eps2 must be >= 0")
        if not self.q > 0:
            raise ValueError("q must be > 0")
        if not (1.0 - self.q * self.T) > 0:
            raise ValueError("(1 - q*T) must be > 0")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must satisfy 0 < beta < 1")
        if not self.gamma > 1.0:
            raise ValueError("gamma must be > 1")


class SyncError(NamedTuple):
    e1: float
    e2: float
    e3: float
    e4: float

    @property
    def sup_norm(self) -> float:
        return max(abs(self.e1), abs(self.e2), abs(self.e3), abs(self.e4))


@dataclass
class SyncReport:
    """Outcome of a synchronization run.

    iterations_to_converge is the first k with ||e(k)||_inf <= tol, or
    None when the run hit max_iter without converging.
    """

    converged: bool
    iterations_to_converge: int | None
    final_error_norm: float
    error_history: list[SyncError] = field(repr=False, default_factory=list)


def sync_error(slave, master, alpha: float) -> SyncError:
    """Componentwise projective error y - alpha*x."""
    return SyncError(
        slave[0] - alpha * master[0],
        slave[1] - alpha * master[1],
        slave[2] - alpha * master[2],
        slave[3] - alpha * master[3],
    )


def sliding_surface(e, params: SmcParams) -> float:
    """S = e1 + c1*e2 + c2*e3 + c3*e4."""
    return e[0] + params.c1 * e[1] + params.c2 * e[2] + params.c3 * e[3]


def _sgn(s: float) -> float:
    # sgn(0) := 0 inside the reaching law keeps u finite and continuous
    return 1.0 if s > 0 else (-1.0 if s < 0 else 0.0)


def control_law(e, S: float, master, slave, map_params: HenonParams,
                params: SmcParams) -> float:
    """Reaching-law control for the slave's first state equation.

    NOTE: track_master() inlines this exact expression; keep the two in
    lockstep so the fast path stays bit-identical.
    """
    a, b = map_params.a, map_params.b
    x3 = master[2]
    y3 = slave[2]
    sgn = _sgn(S)
    abs_s = abs(S)
    u = ((1.0 - params.q * params.T) * S
         - params.eps1 * abs_s ** params.beta * sgn
         - params.eps2 * params.T * abs_s ** params.gamma * sgn
         - params.c1 * e[0] - params.c2 * e[1] - params.c3 * e[2]
         + b * e[3]
         - params.alpha * (x3 * x3) + y3 * y3)
    if params.equilibrium_offset:
        u += (params.alpha - 1.0) * a
    else:
        u += params.alpha - a
    return u


def synchronize_step(master, slave, map_params: HenonParams,
                     params: SmcParams):
    """One controlled slave update against the current master state.

    Returns (slave', u, e) where e is the pre-step error. The master is
    advanced externally (it never sees the controller).
    """
    e = sync_error(slave, master, params.alpha)
    s = sliding_surface(e, params)
    u = control_law(e, s, master, slave, map_params, params)
    new_slave = henon_step(slave, map_params, control=u)
    return new_slave, u, e


def run_synchronization(master_seed, slave_seed, map_params: HenonParams,
                        params: SmcParams, tol: float = 1e-6,
                        max_iter: int = 10_000) -> SyncReport:
    """Iterate master (free) and slave (controlled) until ||e||_inf <= tol.

    Non-convergence within max_iter is a reported status, not an error.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    master = HenonState(*master_seed)
    slave = HenonState(*slave_seed)
    history: list[SyncError] = []
    for k in range(max_iter + 1):
        e = sync_error(slave, master, params.alpha)
        history.append(e)
        if e.sup_norm <= tol:
            return SyncReport(True, k, e.sup_norm, history)
        if k == max_iter:
            break
        slave, _, _ = synchronize_step(master, slave, map_params, params)
        master = henon_step(master, map_params)
    return SyncReport(False, None, history[-1].sup_norm, history)


def track_master(master_seed, slave_seed, map_params: HenonParams,
                 params: SmcParams, n_steps: int):
    """Run the coupled pair for n_steps and return the slave's trail.

    Returns (slave_states, err_sup): slave_states[k] is the slave state at
    step k (row 0 = seed) as an (n_steps+1, 4) array, err_sup[k] is
    ||e(k)||_inf. Bit-identical to iterating synchronize_step, but fast
    enough for multi-million-symbol payloads.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    a, b = map_params.a, map_params.b
    alpha = params.alpha
    T, q = params.T, params.q
    eps1, eps2 = params.eps1, params.eps2
    beta, gamma = params.beta, params.gamma
    c1, c2, c3 = params.c1, params.c2, params.c3
    if params.equilibrium_offset:
        tail = (alpha - 1.0) * a
    else:
        tail = alpha - a

    ms = _delay_series(master_seed, map_params, n_steps)

    y1, y2, y3, y4 = slave_seed
    ys = [y4, y3, y2, y1]
    ys_append = ys.append
    e1 = y1 - alpha * ms[3]
    e2 = y2 - alpha * ms[2]
    e3 = y3 - alpha * ms[1]
    e4 = y4 - alpha * ms[0]
    seed_e = (e1, e2, e3, e4)
    e1_hist = [e1]
    e1_append = e1_hist.append

    for k in range(n_steps):
        s = e1 + c1 * e2 + c2 * e3 + c3 * e4
        sgn = 1.0 if s > 0 else (-1.0 if s < 0 else 0.0)
        abs_s = s if s >= 0 else -s
        mx3 = ms[k + 1]
        # inlined control_law(); keep in lockstep with that function
        u = ((1.0 - q * T) * s
             - eps1 * abs_s ** beta * sgn
             - eps2 * T * abs_s ** gamma * sgn
             - c1 * e1 - c2 * e2 - c3 * e3
             + b * e4
             - alpha * (mx3 * mx3) + y3 * y3
             + tail)
        y1, y2, y3, y4 = a - y3 * y3 - b * y4 + u, y1, y2, y3
        ys_append(y1)
        e4, e3, e2 = e3, e2, e1
        e1 = y1 - alpha * ms[k + 4]
        e1_append(e1)

    if not math.isfinite(y1):
        bad = int(np.argmax(~np.isfinite(np.asarray(ys))))
        raise DivergenceError(
            f"slave map diverged at iteration {bad - 3}", iteration=bad - 3)

    ya = np.asarray(ys)
    m = n_steps + 1
    slave_states = np.column_stack([ya[3:3 + m], ya[2:2 + m],
                                    ya[1:1 + m], ya[0:0 + m]])
    e1a = np.asarray(e1_hist)
    # e2..e4 are delayed copies of e1 except the seed row
    e2a = np.concatenate([[seed_e[1]], e1a[:-1]])
    e3a = np.concatenate([[seed_e[2]], e2a[:-1]])
    e4a = np.concatenate([[seed_e[3]], e3a[:-1]])
    err_sup = np.maximum.reduce([np.abs(e1a), np.abs(e2a),
                                 np.abs(e3a), np.abs(e4a)])
    return slave_states, err_sup
