"""Subgrouping tournament: error-free retrieval through two-memory rounds.

Each round splits the surviving standards into pairs, stores each pair in its
own two-memory network, and keeps the memory the defective input flows to.
Because a winner is only ever declared by a high overlap with a stored memory,
the final output is always one of the standards.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .dynamics import IntegratorConfig, certified_memory, init_from_gray, integrate
from .errors import (
    AmbiguousRetrieval,
    AntipodalMemories,
    DimensionMismatch,
    NoRetrieval,
    ParameterOutOfRange,
    WrongMemoryCount,
)
from .network import build_network, overlaps
from .patterns import BinaryPattern, GrayPattern, as_pattern, sign_equivalent
from .spectral import critical_epsilon_m2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InOrder:
    pass


@dataclass(frozen=True)
class Seeded:
    seed: int


Pairing = Union[InOrder, Seeded]


@dataclass(frozen=True)
class TournamentConfig:
    epsilon_fraction: float = 0.5
    pairing: Pairing = field(default_factory=InOrder)
    overlap_threshold: float = 0.999
    # dt = 0.2 keeps RK4 well inside its stability range for two memories
    # (|lambda| <= 2 + 2 eps) and cuts the step count fourfold
    integrator: IntegratorConfig = field(default_factory=lambda: IntegratorConfig(dt=0.2))
    # stop a pair's integration once a memory is certified and above threshold
    early_stop: bool = True

    def __post_init__(self):
        if not 0.0 < self.epsilon_fraction < 1.0:
            raise ParameterOutOfRange(f"epsilon_fraction must lie in (0, 1), got {self.epsilon_fraction}")
        if not 0.0 < self.overlap_threshold < 1.0:
            raise ParameterOutOfRange(f"overlap_threshold must lie in (0, 1), got {self.overlap_threshold}")


@dataclass(frozen=True)
class PairResult:
    winner: int  # 1 or 2, position within the pair
    overlaps: tuple[float, float]
    epsilon: float
    steps: int
    converged: bool
    kicks: int


@dataclass(frozen=True)
class RoundRecord:
    round: int
    subgroups: tuple[tuple[int, ...], ...]  # 1-based standard indices
    winners: tuple[int, ...]
    diagnostics: tuple[PairResult | None, ...]  # None for a singleton


@dataclass(frozen=True)
class RetrievalOutcome:
    winner: BinaryPattern
    winner_index: int  # 1-based index into the standards
    rounds: tuple[RoundRecord, ...]
    total_integrations: int


def _pair_epsilon(xi1: BinaryPattern, xi2: BinaryPattern, cfg: TournamentConfig) -> float:
    return cfg.epsilon_fraction * critical_epsilon_m2(xi1, xi2).value


def retrieve_pair(xi1: BinaryPattern, xi2: BinaryPattern, defective: GrayPattern,
                  cfg: TournamentConfig | None = None) -> PairResult:
    """Which of two memories the defective input flows to."""
    cfg = cfg or TournamentConfig()
    xi1, xi2 = as_pattern(xi1), as_pattern(xi2)
    if not isinstance(defective, GrayPattern):
        defective = GrayPattern(defective)
    if defective.N != xi1.N or xi2.N != xi1.N:
        raise DimensionMismatch(f"defective has N={defective.N}, memories have N={xi1.N}, {xi2.N}")
    eps = _pair_epsilon(xi1, xi2, cfg)
    net = build_network([xi1, xi2], eps)
    thr = cfg.overlap_threshold

    def done(phi: np.ndarray, t: float) -> bool:
        k = certified_memory(net, phi)
        return k is not None and overlaps(phi, [net.memories[k - 1]])[0] > thr

    traj = integrate(net, init_from_gray(defective), cfg.integrator,
                     until=done if cfg.early_stop else None)
    m = traj.terminal_overlaps
    above = [k for k in (1, 2) if m[k - 1] > thr]
    if len(above) == 2:
        raise AmbiguousRetrieval(f"both overlaps exceed {thr}: {m.tolist()}")
    if not above:
        raise NoRetrieval(f"terminal overlaps {m.tolist()} stay below {thr} "
                          f"(t={traj.terminal.time:g}, converged={traj.converged})")
    return PairResult(above[0], (float(m[0]), float(m[1])), eps, traj.steps, traj.converged, traj.kicks)


def subgroup(indices: Sequence[int], pairing: Pairing | None = None,
             round_index: int = 0) -> list[tuple[int, ...]]:
    """Split indices into consecutive pairs, the last one a singleton when odd.

    Seeded pairing shuffles first with a generator keyed on (seed, round_index).
    """
    items = list(indices)
    if not items:
        raise ValueError("cannot subgroup an empty list")
    pairing = pairing or InOrder()
    if isinstance(pairing, Seeded):
        rng = np.random.default_rng([int(pairing.seed), int(round_index)])
        items = [items[i] for i in rng.permutation(len(items))]
    return [tuple(items[i:i + 2]) for i in range(0, len(items), 2)]


def tournament(standards: Sequence[BinaryPattern], defective: GrayPattern,
               cfg: TournamentConfig | None = None) -> RetrievalOutcome:
    cfg = cfg or TournamentConfig()
    pats = [as_pattern(p) for p in standards]
    if not pats:
        raise WrongMemoryCount("at least one standard pattern is required")
    if not isinstance(defective, GrayPattern):
        defective = GrayPattern(defective)
    for p in pats:
        if p.N != defective.N:
            raise DimensionMismatch(f"standard has N={p.N}, defective has N={defective.N}")
    for a in range(len(pats)):
        for b in range(a + 1, len(pats)):
            if sign_equivalent(pats[a], pats[b]):
                raise AntipodalMemories(f"standards {a + 1} and {b + 1} coincide up to sign")

    alive = list(range(1, len(pats) + 1))
    rounds: list[RoundRecord] = []
    integrations = 0
    r = 0
    while len(alive) > 1:
        r += 1
        groups = subgroup(alive, cfg.pairing, r)
        winners, diags = [], []
        for g in groups:
            if len(g) == 1:
                winners.append(g[0])
                diags.append(None)
                continue
            integrations += 1
            try:
                res = retrieve_pair(pats[g[0] - 1], pats[g[1] - 1], defective, cfg)
            except NoRetrieval as exc:
                raise NoRetrieval(f"round {r}, pair {g}: {exc}", round_index=r) from exc
            winners.append(g[res.winner - 1])
            diags.append(res)
        logger.debug("round %d: %s -> %s", r, groups, winners)
        rounds.append(RoundRecord(r, tuple(groups), tuple(winners), tuple(diags)))
        alive = winners
    w = alive[0]
    return RetrievalOutcome(pats[w - 1], w, tuple(rounds), integrations)


def expected_rounds(M: int) -> int:
    return math.ceil(math.log2(M)) if M > 1 else 0
