"""Hebbian oscillator network: couplings, vector field, potential, overlaps.

The model is

    dphi_i/dt = (1/N) sum_j C_ij sin(phi_j - phi_i) + (eps/N) sum_j sin 2(phi_j - phi_i)

with C_ij = sum_k xi^k_i xi^k_j. It is the gradient flow of

    f(phi) = -(1/2N) sum_ij C_ij cos(phi_j - phi_i) - (eps/4N) sum_ij cos 2(phi_j - phi_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import AntipodalMemories, DimensionMismatch, NegativeEpsilon, WrongMemoryCount
from .patterns import BinaryPattern, _check_same_dim, as_pattern, sign_equivalent


@dataclass(frozen=True, eq=False)
class HebbianNetwork:
    memories: tuple[BinaryPattern, ...]
    coupling: np.ndarray
    epsilon: float
    # rows are the memories; C = X.T @ X lets the vector field run in O(NM)
    _X: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return self.memories[0].N

    @property
    def M(self) -> int:
        return len(self.memories)

    def with_epsilon(self, epsilon: float) -> "HebbianNetwork":
        return build_network(self.memories, epsilon)


@dataclass(frozen=True, eq=False)
class PhaseState:
    phases: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        arr = np.array(self.phases, dtype=float)
        arr.flags.writeable = False
        object.__setattr__(self, "phases", arr)

    @property
    def N(self) -> int:
        return int(self.phases.size)

    def shifted(self, c: float) -> "PhaseState":
        return PhaseState(self.phases + c, self.time)

    def wrapped(self) -> np.ndarray:
        """Phases reduced to [0, 2*pi) for display."""
        return np.mod(self.phases, 2 * np.pi)


def build_network(memories: Sequence[BinaryPattern], epsilon: float) -> HebbianNetwork:
    mems = tuple(as_pattern(m) for m in memories)
    if len(mems) < 1:
        raise WrongMemoryCount("at least one memory is required")
    _check_same_dim(*mems)
    if not epsilon >= 0:
        raise NegativeEpsilon(f"epsilon must be >= 0, got {epsilon}")
    for k in range(len(mems)):
        for l in range(k + 1, len(mems)):
            if sign_equivalent(mems[k], mems[l]):
                raise AntipodalMemories(f"memories {k + 1} and {l + 1} coincide up to sign")
    X = np.vstack([m.entries for m in mems]).astype(float)
    X.flags.writeable = False
    C = X.T @ X
    C.flags.writeable = False
    return HebbianNetwork(mems, C, float(epsilon), X)


def _phases(net: HebbianNetwork, state) -> np.ndarray:
    phi = state.phases if isinstance(state, PhaseState) else np.asarray(state, dtype=float)
    if phi.shape != (net.N,):
        raise DimensionMismatch(f"state has shape {phi.shape}, network has N={net.N}")
    return phi


def rhs(net: HebbianNetwork, state) -> np.ndarray:
    phi = _phases(net, state)
    z = np.exp(1j * phi)
    w = z.conj()
    cz = net._X.T @ (net._X @ z)
    out = (w * cz).imag
    if net.epsilon:
        out += net.epsilon * (w * w * np.sum(z * z)).imag
    return out / net.N


def potential(net: HebbianNetwork, state) -> float:
    phi = _phases(net, state)
    z = np.exp(1j * phi)
    proj = net._X @ z
    hebb = float(np.sum(np.abs(proj) ** 2))
    second = abs(np.sum(z * z)) ** 2
    return -hebb / (2 * net.N) - net.epsilon * second / (4 * net.N)


def state_jacobian(net: HebbianNetwork, state) -> np.ndarray:
    """Jacobian of the vector field at an arbitrary phase state."""
    phi = _phases(net, state)
    d = phi[None, :] - phi[:, None]
    J = (net.coupling * np.cos(d) + 2 * net.epsilon * np.cos(2 * d)) / net.N
    np.fill_diagonal(J, 0.0)
    J[np.diag_indices_from(J)] = -J.sum(axis=1)
    return J


def bipolar_state(eta: BinaryPattern) -> PhaseState:
    eta = as_pattern(eta)
    return PhaseState(np.where(eta.entries > 0, 0.0, np.pi))


def overlap(state, eta: BinaryPattern) -> float:
    eta = as_pattern(eta)
    phi = state.phases if isinstance(state, PhaseState) else np.asarray(state, dtype=float)
    if phi.shape != (eta.N,):
        raise DimensionMismatch(f"state has shape {phi.shape}, pattern has N={eta.N}")
    e = eta.entries.astype(float)
    re = float(np.dot(e, np.cos(phi)))
    im = float(np.dot(e, np.sin(phi)))
    return min(1.0, float(np.hypot(re, im)) / eta.N)


def overlaps(state, memories: Sequence[BinaryPattern]) -> np.ndarray:
    return np.array([overlap(state, m) for m in memories])
