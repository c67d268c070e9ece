"""Jacobian spectra at bipolar equilibria and the critical second-harmonic strengths.

Closed forms cover two memories (any probe pattern) and three memories (at a
memory). Everything else goes through the numeric Jacobi oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .eigen import jacobi_eigvalsh
from .errors import (
    DegenerateOverlap,
    DimensionMismatch,
    HypothesisViolated,
    IsMemory,
    NotSymmetric,
    WrongMemoryCount,
)
from .network import HebbianNetwork
from .patterns import (
    BinaryPattern,
    _check_same_dim,
    as_pattern,
    index_sets_three,
    index_sets_two,
    sign_equivalent,
)

CLUSTER_TOL = 1e-8
MARGINAL_TOL = 1e-10
SYMMETRY_TOL = 1e-12
SHIFT_LABEL = "V[1]"


@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    multiplicity: int
    label: str


@dataclass(frozen=True)
class SpectrumReport:
    entries: tuple[SpectrumEntry, ...]
    N: int

    def eigenvalues(self) -> np.ndarray:
        """Sorted eigenvalue multiset."""
        vals = [e.value for e in self.entries for _ in range(e.multiplicity)]
        return np.sort(np.array(vals, dtype=float))

    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def merged(self, tol: float = CLUSTER_TOL) -> list[tuple[float, int]]:
        """(value, multiplicity) with numerically equal eigenvalues combined."""
        return _cluster(self.eigenvalues(), tol)

    def lambda_max_nonzero(self) -> float:
        """Largest eigenvalue once a single shift-mode zero is removed."""
        vals = self.eigenvalues()
        if vals.size <= 1:
            return 0.0
        drop = int(np.argmin(np.abs(vals)))
        return float(np.max(np.delete(vals, drop)))

    def format(self, digits: int = 9) -> str:
        lines = [f"{'eigenvalue':>18} {'mult':>5}  eigenspace"]
        for e in self.entries:
            lines.append(f"{e.value:>18.{digits}g} {e.multiplicity:>5d}  {e.label}")
        return "\n".join(lines)


class Status(enum.Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    MARGINAL = "Marginal"


class Source(enum.Enum):
    ANALYTIC_M2 = "AnalyticM2"
    ANALYTIC_M3 = "AnalyticM3"
    NUMERIC = "Numeric"


@dataclass(frozen=True)
class StabilityVerdict:
    status: Status
    lambda_max_nonzero: float
    source: Source
    note: str = ""


class Regime(enum.Enum):
    GENERIC = "Generic"
    BOUNDARY = "Boundary"
    THREE_MEMORY = "ThreeMemory"


@dataclass(frozen=True)
class CriticalEpsilon:
    value: float
    regime: Regime
    memory: int | None = None  # 1-based memory index for the three-memory regime


def _cluster(vals: np.ndarray, tol: float) -> list[tuple[float, int]]:
    vals = np.sort(np.asarray(vals, dtype=float))
    groups: list[list[float]] = []
    for v in vals:
        if groups and v - groups[-1][-1] <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(float(np.mean(g)), len(g)) for g in groups]


def _build_report(N: int, items: list[tuple[float, int, str]]) -> SpectrumReport:
    entries = tuple(SpectrumEntry(float(v), int(m), lab) for v, m, lab in items if m > 0)
    report = SpectrumReport(entries, N)
    assert report.total_multiplicity() == N, (report, N)
    return report


def jacobian(net: HebbianNetwork, eta: BinaryPattern) -> np.ndarray:
    """Jacobian of the vector field at the bipolar state of eta."""
    eta = as_pattern(eta)
    if eta.N != net.N:
        raise DimensionMismatch(f"pattern has N={eta.N}, network has N={net.N}")
    e = eta.entries.astype(float)
    N = net.N
    J = net.coupling * np.outer(e, e) / N + 2.0 * net.epsilon / N
    np.fill_diagonal(J, 0.0)
    J[np.diag_indices(N)] = -J.sum(axis=1)
    return J


def numeric_spectrum(J: np.ndarray, eigvalsh: Callable[[np.ndarray], np.ndarray] = jacobi_eigvalsh) -> SpectrumReport:
    J = np.asarray(J, dtype=float)
    if J.ndim != 2 or J.shape[0] != J.shape[1]:
        raise NotSymmetric("matrix is not square")
    if not np.allclose(J, J.T, rtol=0.0, atol=SYMMETRY_TOL):
        raise NotSymmetric("matrix is not symmetric within 1e-12")
    vals = eigvalsh(0.5 * (J + J.T))
    items = [(v, m, "numeric") for v, m in _cluster(vals, CLUSTER_TOL)]
    return _build_report(J.shape[0], items)


def _require_m(net: HebbianNetwork, M: int) -> None:
    if net.M != M:
        raise WrongMemoryCount(f"expected {M} memories, network has {net.M}")


def analytic_spectrum_memory_m2(net: HebbianNetwork) -> SpectrumReport:
    """Spectrum at either memory of a two-memory network (identical for both)."""
    _require_m(net, 2)
    sets = index_sets_two(*net.memories)
    N, eps = net.N, net.epsilon
    n1, n2 = len(sets.I1), len(sets.I2)
    return _build_report(N, [
        (0.0, 1, SHIFT_LABEL),
        (-2 * (n1 / N + eps), n1 - 1, "V(I1)"),
        (-2 * (n2 / N + eps), n2 - 1, "V(I2)"),
        (-2 * eps, 1, "V(I1;I2)"),
    ])


def _block_label(name: str) -> str:
    return f"V({name}+;{name}-)+V({name}+)+V({name}-)"


def analytic_spectrum_pattern_m2(net: HebbianNetwork, eta: BinaryPattern) -> SpectrumReport:
    """Spectrum at a non-memory bipolar pattern of a two-memory network."""
    _require_m(net, 2)
    eta = as_pattern(eta)
    xi1, xi2 = net.memories
    _check_same_dim(xi1, eta)
    if sign_equivalent(eta, xi1) or sign_equivalent(eta, xi2):
        raise IsMemory("probe is a memory; use analytic_spectrum_memory_m2")
    s = index_sets_two(xi1, xi2, eta)
    N, eps = net.N, net.epsilon
    n1, n2 = len(s.I1), len(s.I2)
    a, b, c, d = len(s.I11), len(s.I12), len(s.I21), len(s.I22)
    items = [
        (0.0, 1, SHIFT_LABEL),
        (-2 * eps, 1, "V(I1;I2)"),
        (2 * ((-a + b) / N - eps), max(a - 1, 0), _block_label("I11")),
        (2 * ((a - b) / N - eps), max(b - 1, 0), _block_label("I12")),
        (2 * (n1 / N - eps), 1 if a and b else 0, "V(I11;I12)"),
        (2 * ((d - c) / N - eps), max(c - 1, 0), _block_label("I21")),
        (2 * ((c - d) / N - eps), max(d - 1, 0), _block_label("I22")),
        (2 * (n2 / N - eps), 1 if c and d else 0, "V(I21;I22)"),
    ]
    return _build_report(N, items)


def _rotate(memories: Sequence[BinaryPattern], which: int) -> tuple[BinaryPattern, ...]:
    """Put memory ``which`` (1-based) first by swapping it with memory 1."""
    order = [0, 1, 2]
    order[0], order[which - 1] = order[which - 1], order[0]
    return tuple(memories[i] for i in order)


def analytic_spectrum_memory_m3(net: HebbianNetwork, which: int = 1) -> SpectrumReport:
    """Spectrum at memory ``which`` (1, 2 or 3) of a three-memory network."""
    _require_m(net, 3)
    if which not in (1, 2, 3):
        raise ValueError("which must be 1, 2 or 3")
    s = index_sets_three(*_rotate(net.memories, which))
    N, eps = net.N, net.epsilon
    j1, j2 = len(s.J1), len(s.J2)
    a, b, c, d = len(s.J11), len(s.J12), len(s.J21), len(s.J22)
    items = [
        (0.0, 1, SHIFT_LABEL),
        # the J1/J2 contrast sees the full Hebbian term: -1 - 2 eps, not -2 eps
        (-1.0 - 2 * eps, 1, "V(J1;J2)"),
        ((-3 * a + b - j2) / N - 2 * eps, max(a - 1, 0), _block_label("J11")),
        ((-3 * b + a - j2) / N - 2 * eps, max(b - 1, 0), _block_label("J12")),
        ((j1 - j2) / N - 2 * eps, 1 if a and b else 0, "V(J11;J12)"),
        ((-3 * c + d - j1) / N - 2 * eps, max(c - 1, 0), _block_label("J21")),
        ((-3 * d + c - j1) / N - 2 * eps, max(d - 1, 0), _block_label("J22")),
        ((j2 - j1) / N - 2 * eps, 1 if c and d else 0, "V(J21;J22)"),
    ]
    return _build_report(N, items)


def critical_epsilon_m2(xi1: BinaryPattern, xi2: BinaryPattern) -> CriticalEpsilon:
    """Largest eps below which only the two memories are stable.

    Below the returned value every other bipolar pattern is linearly unstable
    while the memories stay asymptotically stable for every eps > 0.
    """
    s = index_sets_two(as_pattern(xi1), as_pattern(xi2))
    N = len(s.I1) + len(s.I2)
    n1, n2 = len(s.I1), len(s.I2)
    if n1 in (1, N - 1):
        return CriticalEpsilon((N - 1) / N, Regime.BOUNDARY)
    return CriticalEpsilon(min(n1, n2) / N, Regime.GENERIC)


def critical_epsilon_m3(xi1: BinaryPattern, xi2: BinaryPattern,
                        xi3: BinaryPattern) -> tuple[CriticalEpsilon, CriticalEpsilon, CriticalEpsilon]:
    """Stability thresholds of each of three memories.

    Memory l is unstable for eps below its threshold and asymptotically
    stable above it. Requires all four agreement classes J11, J12, J21, J22
    to be nonempty.
    """
    mems = tuple(as_pattern(m) for m in (xi1, xi2, xi3))
    s = index_sets_three(*mems)
    if not (s.J11 and s.J12 and s.J21 and s.J22):
        raise HypothesisViolated(
            "three-memory thresholds need J11, J12, J21, J22 all nonempty, got sizes "
            f"{len(s.J11)}, {len(s.J12)}, {len(s.J21)}, {len(s.J22)}")
    N = mems[0].N
    J11 = set(s.J11)
    sizes = (len(J11 | set(s.J12)), len(J11 | set(s.J22)), len(J11 | set(s.J21)))
    return tuple(CriticalEpsilon(abs(k / N - 0.5), Regime.THREE_MEMORY, l + 1)
                 for l, k in enumerate(sizes))  # type: ignore[return-value]


def legacy_epsilon_lower_bound(memories: Sequence[BinaryPattern], eta: BinaryPattern) -> float:
    """Overlap-based lower bound on a pattern's critical eps (orthogonal memories).

    max over l of (N^2 - sum_k (xi^k . eta)^2) / (2 (N^2 - (xi^l . eta)^2)),
    skipping l whose denominator vanishes.
    """
    mems = [as_pattern(m) for m in memories]
    if not mems:
        raise WrongMemoryCount("at least one memory is required")
    eta = as_pattern(eta)
    _check_same_dim(*mems, eta)
    N = eta.N
    dots = np.array([m.dot(eta) for m in mems], dtype=float)
    num = N * N - float(np.sum(dots ** 2))
    dens = N * N - dots ** 2
    ok = dens != 0
    if not np.any(ok):
        raise DegenerateOverlap("eta = +/-xi^l for every memory; bound undefined")
    return float(np.max(num / (2.0 * dens[ok])))


def verdict_from_lambda(lam: float, source: Source, note: str = "") -> StabilityVerdict:
    if lam < -MARGINAL_TOL:
        status = Status.STABLE
    elif lam > MARGINAL_TOL:
        status = Status.UNSTABLE
    else:
        status = Status.MARGINAL
        note = note or ("linearization is inconclusive at a critical strength; "
                        "the potential may still have a (non-strict) local minimum here")
    return StabilityVerdict(status, lam, source, note)


def spectrum(net: HebbianNetwork, eta: BinaryPattern) -> tuple[SpectrumReport, Source]:
    """Best available spectrum at eta: closed form where one exists, numeric otherwise."""
    eta = as_pattern(eta)
    if eta.N != net.N:
        raise DimensionMismatch(f"pattern has N={eta.N}, network has N={net.N}")
    if net.M == 2:
        if any(sign_equivalent(eta, m) for m in net.memories):
            return analytic_spectrum_memory_m2(net), Source.ANALYTIC_M2
        return analytic_spectrum_pattern_m2(net, eta), Source.ANALYTIC_M2
    if net.M == 3:
        for l, m in enumerate(net.memories, start=1):
            if sign_equivalent(eta, m):
                return analytic_spectrum_memory_m3(net, l), Source.ANALYTIC_M3
    return numeric_spectrum(jacobian(net, eta)), Source.NUMERIC


def classify(net: HebbianNetwork, eta: BinaryPattern) -> StabilityVerdict:
    report, source = spectrum(net, eta)
    return verdict_from_lambda(report.lambda_max_nonzero(), source)


def numeric_lambda_max(net: HebbianNetwork, eta: BinaryPattern) -> float:
    return numeric_spectrum(jacobian(net, eta)).lambda_max_nonzero()


def bisect_sign_change(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-10, max_iter: int = 200) -> float | None:
    """Locate where a decreasing f crosses from > 0 to <= 0 on [lo, hi].

    Returns lo if f(lo) <= 0 already, None if f(hi) > 0 (no crossing bracketed).
    """
    if f(lo) <= 0:
        return lo
    if f(hi) > 0:
        return None
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def numeric_critical_epsilon(memories: Sequence[BinaryPattern], eta: BinaryPattern,
                             hi: float | None = None, tol: float = 1e-10) -> float | None:
    """Bisect eps for the numeric sign change of lambda_max_nonzero at eta."""
    from .network import build_network

    mems = [as_pattern(m) for m in memories]
    hi = float(len(mems) + 1) if hi is None else hi
    base = build_network(mems, 0.0)

    def lam(eps: float) -> float:
        return numeric_lambda_max(base.with_epsilon(eps), eta)

    return bisect_sign_change(lam, 0.0, hi, tol=tol)
