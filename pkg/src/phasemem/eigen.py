"""Cyclic Jacobi eigensolver for real symmetric matrices.

Rotations are scheduled in round-robin order: each round annihilates N/2
disjoint off-diagonal pairs at once, so a round is one orthogonal similarity
transform and a sweep (N-1 rounds) touches every pair exactly once.
Each round costs O(N^3), which is fine for the N <= ~100 matrices used here.
"""

from __future__ import annotations

import logging

import numpy as np

logger = logging.getLogger(__name__)

OFF_TOL = 1e-12
MAX_SWEEPS = 100


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings for a cyclic sweep; index n (odd case) is a bye."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _off_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.linalg.norm(off))


def jacobi_eigh(A: np.ndarray, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS,
                vectors: bool = True) -> tuple[np.ndarray, np.ndarray | None]:
    """Eigenvalues (ascending) and optionally eigenvectors (columns) of symmetric A.

    Stops once the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||A||_F)`` or after ``max_sweeps`` sweeps.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    V = np.eye(n) if vectors else None
    if n == 1:
        return np.diag(A).copy(), V
    threshold = tol * max(1.0, float(np.linalg.norm(A)))
    schedule = _round_robin(n)
    for sweep in range(max_sweeps):
        if _off_norm(A) < threshold:
            break
        for ps, qs in schedule:
            apq = A[ps, qs]
            app, aqq = A[ps, ps], A[qs, qs]
            with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                theta = (aqq - app) / (2.0 * apq)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            t[apq == 0.0] = 0.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # the round's disjoint Givens rotations as one orthogonal matrix;
            # two small matmuls beat per-pair row/column updates for moderate n
            R = np.eye(n)
            R[ps, ps] = c
            R[qs, qs] = c
            R[ps, qs] = s
            R[qs, ps] = -s
            A = R.T @ A @ R
            A[ps, qs] = 0.0
            A[qs, ps] = 0.0
            if V is not None:
                V = V @ R
    else:
        if _off_norm(A) >= threshold:
            logger.warning("Jacobi sweep cap %d reached, off-norm %.3e",
                           max_sweeps, _off_norm(A))
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], (V[:, order] if V is not None else None)


def jacobi_eigvalsh(A: np.ndarray, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    return jacobi_eigh(A, tol, max_sweeps, vectors=False)[0]
