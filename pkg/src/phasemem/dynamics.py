"""Fixed-step integration of the gradient flow, diameters and the basin certificate.

Explicit RK4 is stable for this field when dt < 2 / (M + 2 eps) (the Jacobian
spectrum lies in [-(M + 2 eps), M + 2 eps]); the default dt = 0.05 is far inside
that range for the network sizes used here.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, NonFiniteState, ParameterOutOfRange, WrongMemoryCount
from .network import HebbianNetwork, PhaseState, bipolar_state, overlaps, potential, rhs, state_jacobian
from .patterns import BinaryPattern, GrayPattern, as_pattern

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 0.05
    t_max: float = 200.0
    stop_tol: float = 1e-8
    trace_stride: int = 10
    # A bipolar start is itself an equilibrium; when the stopping rule fires at an
    # unstable one we push along its leading unstable direction and keep going.
    # Slow passages near saddles (|rhs| < saddle_tol) get the same treatment,
    # checked at sample points only.
    escape_saddles: bool = True
    kick: float = 1e-2
    max_kicks: int = 20
    unstable_tol: float = 1e-8
    saddle_tol: float = 1e-4

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ParameterOutOfRange(f"dt must be positive, got {self.dt}")
        if not self.t_max > 0:
            raise ParameterOutOfRange(f"t_max must be positive, got {self.t_max}")
        if not self.stop_tol > 0:
            raise ParameterOutOfRange(f"stop_tol must be positive, got {self.stop_tol}")
        if int(self.trace_stride) != self.trace_stride or self.trace_stride < 1:
            raise ParameterOutOfRange(f"trace_stride must be a positive integer, got {self.trace_stride}")
        if self.kick <= 0 or self.max_kicks < 0:
            raise ParameterOutOfRange("kick must be positive and max_kicks non-negative")


@dataclass(frozen=True)
class Sample:
    time: float
    state: PhaseState
    overlaps: np.ndarray
    diameter: float
    energy: float


@dataclass(frozen=True)
class Trajectory:
    samples: tuple[Sample, ...]
    terminal: PhaseState
    converged: bool
    steps: int
    kicks: int = 0
    stopped_early: bool = False

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.samples])

    @property
    def diameters(self) -> np.ndarray:
        return np.array([s.diameter for s in self.samples])

    @property
    def energies(self) -> np.ndarray:
        return np.array([s.energy for s in self.samples])

    @property
    def terminal_overlaps(self) -> np.ndarray:
        return self.samples[-1].overlaps


@dataclass(frozen=True)
class BasinCertificate:
    H: float
    lambda1: float
    initial_diameter: float
    satisfied: bool

    def bound(self, t) -> np.ndarray:
        """Certified envelope D(0) exp(-lambda1 t)."""
        return self.initial_diameter * np.exp(-self.lambda1 * np.asarray(t, dtype=float))


def diameter(state) -> float:
    phi = state.phases if isinstance(state, PhaseState) else np.asarray(state, dtype=float)
    return float(np.max(phi) - np.min(phi))


def init_from_gray(defective: GrayPattern) -> PhaseState:
    if not isinstance(defective, GrayPattern):
        defective = GrayPattern(defective)
    return PhaseState(np.arccos(defective.entries))


def shifted_coordinates(state, eta: BinaryPattern) -> np.ndarray:
    """phi - phi*(eta), each entry moved by a multiple of 2 pi into (c - pi, c + pi].

    c is the circular mean of the raw differences, so the result does not depend
    on which sign representative of eta is used (up to a uniform shift).
    """
    phi = state.phases if isinstance(state, PhaseState) else np.asarray(state, dtype=float)
    d = phi - bipolar_state(as_pattern(eta)).phases
    c = float(np.angle(np.mean(np.exp(1j * d))))
    return c + np.pi - np.mod(c + np.pi - d, 2 * np.pi)


def _leading_unstable(net: HebbianNetwork, phi: np.ndarray, tol: float,
                      field: np.ndarray) -> np.ndarray | None:
    """Unit leading unstable direction (shift mode excluded), oriented downhill.

    The sign makes v . rhs >= 0 so the kick cannot raise the potential to first
    order; at an exact equilibrium the first nonzero component is made positive.
    """
    J = state_jacobian(net, phi)
    w, V = np.linalg.eigh(J)
    ones = np.full(net.N, 1.0 / math.sqrt(net.N))
    for k in np.argsort(w)[::-1]:
        if w[k] <= tol:
            return None
        v = V[:, k] - ones * float(ones @ V[:, k])
        nv = np.linalg.norm(v)
        if nv < 0.5:
            continue  # shift mode
        v /= nv
        slope = float(v @ field)
        if abs(slope) > 1e-14:
            return v if slope > 0 else -v
        lead = v[np.flatnonzero(np.abs(v) > 1e-12)[0]]
        return v if lead > 0 else -v
    return None


def integrate(net: HebbianNetwork, initial, cfg: IntegratorConfig | None = None,
              until: Callable[[np.ndarray, float], bool] | None = None,
              reference: BinaryPattern | None = None) -> Trajectory:
    """RK4 integration of the phase dynamics from ``initial``.

    Stops when the sup-norm of the vector field falls below ``cfg.stop_tol`` at a
    point that is not a linearly unstable equilibrium (converged), when the
    optional ``until(phases, t)`` predicate returns true at a sample point, or at
    ``cfg.t_max``. With ``reference`` the stored diameters are taken in the
    coordinates shifted by phi*(reference); otherwise on the raw phases.
    """
    cfg = cfg or IntegratorConfig()
    if not isinstance(initial, PhaseState):
        initial = PhaseState(initial)
    if initial.N != net.N:
        raise DimensionMismatch(f"state has N={initial.N}, network has N={net.N}")
    phi = np.array(initial.phases, dtype=float)
    if not np.all(np.isfinite(phi)):
        raise NonFiniteState("initial state is not finite")
    mean0 = float(np.mean(phi))
    t0 = initial.time
    offset = None
    if reference is not None:
        offset = shifted_coordinates(phi, reference) - phi

    def record(p: np.ndarray, t: float) -> Sample:
        d = diameter(p + offset) if offset is not None else diameter(p)
        st = PhaseState(p.copy(), t)
        return Sample(t, st, overlaps(st, net.memories), d, potential(net, p))

    dt, stride = cfg.dt, int(cfg.trace_stride)
    samples = [record(phi, t0)]
    steps = kicks = 0
    checked_at = -1
    converged = stopped = False
    t = t0
    k1 = rhs(net, phi)
    while True:
        speed = float(np.max(np.abs(k1)))
        at_rest = speed < cfg.stop_tol
        plateau = speed < cfg.saddle_tol and steps % stride == 0 and steps != checked_at
        v = None
        if cfg.escape_saddles and kicks < cfg.max_kicks and (at_rest or plateau):
            checked_at = steps
            v = _leading_unstable(net, phi, cfg.unstable_tol, k1)
        if v is not None:
            kicks += 1
            logger.debug("leaving unstable equilibrium at t=%.3f (kick %d)", t, kicks)
            phi = phi + cfg.kick * v
            k1 = rhs(net, phi)
            continue
        if at_rest:
            converged = True
            break
        if t - t0 >= cfg.t_max - 1e-12:
            break
        k2 = rhs(net, phi + 0.5 * dt * k1)
        k3 = rhs(net, phi + 0.5 * dt * k2)
        k4 = rhs(net, phi + dt * k3)
        phi = phi + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        steps += 1
        t = t0 + steps * dt
        if not np.all(np.isfinite(phi)):
            raise NonFiniteState(f"state became non-finite at t={t}")
        k1 = rhs(net, phi)
        if steps % stride == 0:
            samples.append(record(phi, t))
            if until is not None and until(phi, t):
                stopped = True
                break

    # the shift mode is neutral; pin the mean phase for reproducible snapshots
    phi = phi + (mean0 - float(np.mean(phi)))
    terminal = PhaseState(phi, t)
    if samples[-1].time < t:
        samples.append(record(phi, t))
    else:
        samples[-1] = record(phi, t)
    return Trajectory(tuple(samples), terminal, converged, steps, kicks, stopped)


def basin_certificate(net: HebbianNetwork, memory_index: int, initial,
                      H: float | None = None) -> BasinCertificate:
    """Exponential diameter-decay certificate around memory ``memory_index`` (1 or 2).

    ``H`` defaults to the initial shifted diameter itself; any H >= D(0) is valid.
    """
    if net.M != 2:
        raise WrongMemoryCount(f"basin certificate needs two memories, got {net.M}")
    if memory_index not in (1, 2):
        raise ValueError("memory_index must be 1 or 2")
    d0 = diameter(shifted_coordinates(initial, net.memories[memory_index - 1]))
    H = d0 if H is None else float(H)
    if H < d0:
        raise ParameterOutOfRange(f"H={H} is below the initial shifted diameter {d0}")
    lam = 4.0 * net.epsilon * math.cos(H) * math.cos(H / 2) / math.pi
    return BasinCertificate(H, lam, d0, bool(d0 < HALF_PI and H < HALF_PI))


def certified_memory(net: HebbianNetwork, phases: np.ndarray) -> int | None:
    """1-based index of a memory whose basin certificate holds at ``phases``."""
    if net.M != 2:
        return None
    for k in (1, 2):
        if diameter(shifted_coordinates(phases, net.memories[k - 1])) < HALF_PI:
            return k
    return None


def trajectory_table(traj: Trajectory, digits: int = 9) -> str:
    """Space-delimited table: t, diameter, one overlap column per memory."""
    M = traj.samples[0].overlaps.size
    lines = [" ".join(["t", "diameter"] + [f"m{k}" for k in range(1, M + 1)])]
    for s in traj.samples:
        vals = [s.time, s.diameter, *s.overlaps]
        lines.append(" ".join(f"{v:.{digits}g}" for v in vals))
    return "\n".join(lines) + "\n"
