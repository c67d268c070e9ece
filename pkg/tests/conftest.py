import numpy as np
import pytest

from phasemem.network import rhs
from phasemem.patterns import BinaryPattern


def bp(text: str) -> BinaryPattern:
    return BinaryPattern.from_string(text)


@pytest.fixture
def block_pair():
    return bp("++++++"), bp("+++---")


@pytest.fixture
def triple5():
    return bp("+++++"), bp("++---"), bp("+-+-+")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def lapack_eigs(J: np.ndarray) -> np.ndarray:
    """Independent eigenvalue oracle (LAPACK), sorted ascending."""
    return np.sort(np.linalg.eigvalsh(J))


def fd_jacobian(net, phi: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of the vector field; independent of any closed form."""
    N = phi.size
    J = np.empty((N, N))
    for j in range(N):
        e = np.zeros(N)
        e[j] = h
        J[:, j] = (rhs(net, phi + e) - rhs(net, phi - e)) / (2 * h)
    return J


def direct_rhs(C: np.ndarray, eps: float, phi: np.ndarray) -> np.ndarray:
    """Double-sum vector field straight from its definition."""
    N = phi.size
    d = phi[None, :] - phi[:, None]
    return (C * np.sin(d)).sum(axis=1) / N + eps * np.sin(2 * d).sum(axis=1) / N


def direct_potential(C: np.ndarray, eps: float, phi: np.ndarray) -> float:
    N = phi.size
    d = phi[None, :] - phi[:, None]
    return float(-(C * np.cos(d)).sum() / (2 * N) - eps * np.cos(2 * d).sum() / (4 * N))


def random_distinct(rng, N: int, M: int) -> list[BinaryPattern]:
    """M random patterns, pairwise not equal up to sign."""
    from phasemem.patterns import random_pattern, sign_equivalent

    if M > 2 ** (N - 1):
        raise ValueError(f"only {2 ** (N - 1)} sign classes exist for N={N}")
    out: list[BinaryPattern] = []
    while len(out) < M:
        p = random_pattern(rng, N)
        if not any(sign_equivalent(p, q) for q in out):
            out.append(p)
    return out


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Record (and print) one PASS/FAIL line for an acceptance criterion."""

    def report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
