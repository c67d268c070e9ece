"""Seeded corruption of binary patterns into gray queries."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParameterOutOfRange
from .patterns import BinaryPattern, GrayPattern, as_pattern


@dataclass(frozen=True)
class FlipBits:
    k: int
    seed: int = 0


@dataclass(frozen=True)
class UniformNoise:
    amplitude: float
    seed: int = 0


@dataclass(frozen=True)
class Mask:
    """Zero rows first..last (1-based, inclusive) of a width-column image."""

    first: int
    last: int
    width: int


CorruptionMode = Union[FlipBits, UniformNoise, Mask]


def corrupt(pattern: BinaryPattern, mode: CorruptionMode) -> GrayPattern:
    pattern = as_pattern(pattern)
    v = pattern.entries.astype(float)
    N = v.size
    if isinstance(mode, FlipBits):
        if not 0 <= mode.k <= N:
            raise ParameterOutOfRange(f"cannot flip {mode.k} of {N} entries")
        idx = np.random.default_rng(mode.seed).choice(N, size=mode.k, replace=False)
        v[idx] *= -1
    elif isinstance(mode, UniformNoise):
        if not (mode.amplitude >= 0 and np.isfinite(mode.amplitude)):
            raise ParameterOutOfRange(f"noise amplitude must be >= 0, got {mode.amplitude}")
        v = np.clip(v + np.random.default_rng(mode.seed).uniform(-mode.amplitude, mode.amplitude, N), -1.0, 1.0)
    elif isinstance(mode, Mask):
        if mode.width < 1 or N % mode.width:
            raise ParameterOutOfRange(f"width {mode.width} does not divide N={N}")
        rows = N // mode.width
        if not 1 <= mode.first <= mode.last <= rows:
            raise ParameterOutOfRange(f"row window {mode.first}..{mode.last} outside 1..{rows}")
        v[(mode.first - 1) * mode.width:mode.last * mode.width] = 0.0
    else:
        raise ParameterOutOfRange(f"unknown corruption mode {mode!r}")
    return GrayPattern(v)
