"""Binary/gray patterns and the index-set combinatorics behind the spectra.

Indices are 0-based everywhere in code. ``one_based()`` on the index-set
containers gives the 1-based view used in reports.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from .errors import AntipodalMemories, DimensionMismatch, InvalidPattern, OutOfRange


class BinaryPattern:
    """Immutable vector of +1/-1 entries."""

    __slots__ = ("_v",)

    def __init__(self, entries: Iterable[int] | np.ndarray):
        arr = np.asarray(list(entries) if not isinstance(entries, np.ndarray) else entries)
        if arr.ndim != 1:
            raise InvalidPattern("pattern must be one-dimensional")
        if arr.size < 2:
            raise InvalidPattern("pattern needs at least two entries")
        if not np.all((arr == 1) | (arr == -1)):
            raise InvalidPattern("binary pattern entries must be +1 or -1")
        v = arr.astype(np.int8)
        v.flags.writeable = False
        self._v = v

    @classmethod
    def from_string(cls, text: str) -> "BinaryPattern":
        """Build from a string of '+' and '-' (commas/spaces ignored)."""
        out = []
        for ch in text:
            if ch == "+":
                out.append(1)
            elif ch in "-−":
                out.append(-1)
            elif ch in ", ()":
                continue
            else:
                raise InvalidPattern(f"unexpected character {ch!r}")
        return cls(out)

    @property
    def entries(self) -> np.ndarray:
        return self._v

    @property
    def N(self) -> int:
        return int(self._v.size)

    def __len__(self) -> int:
        return self.N

    def __array__(self, dtype=None, copy=None):
        return self._v.astype(dtype if dtype is not None else np.int8)

    def __neg__(self) -> "BinaryPattern":
        return BinaryPattern(-self._v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryPattern):
            return NotImplemented
        return self.N == other.N and bool(np.array_equal(self._v, other._v))

    def __hash__(self) -> int:
        return hash(self._v.tobytes())

    def __repr__(self) -> str:
        body = "".join("+" if x > 0 else "-" for x in self._v)
        return f"BinaryPattern('{body}')"

    def canonical(self) -> "BinaryPattern":
        """Representative of {self, -self} whose first entry is +1."""
        return self if self._v[0] > 0 else -self

    def dot(self, other: "BinaryPattern") -> int:
        _check_same_dim(self, other)
        return int(np.dot(self._v.astype(np.int64), other._v.astype(np.int64)))


class GrayPattern:
    """Immutable vector of reals in [-1, 1] (a defective query)."""

    __slots__ = ("_v",)

    def __init__(self, entries: Iterable[float] | np.ndarray):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise InvalidPattern("gray pattern must be a non-empty vector")
        if not np.all(np.isfinite(arr)) or np.any(np.abs(arr) > 1.0):
            raise OutOfRange("gray entries must lie in [-1, 1]")
        arr.flags.writeable = False
        self._v = arr

    @classmethod
    def from_binary(cls, pattern: BinaryPattern) -> "GrayPattern":
        return cls(pattern.entries.astype(float))

    @property
    def entries(self) -> np.ndarray:
        return self._v

    @property
    def N(self) -> int:
        return int(self._v.size)

    def __len__(self) -> int:
        return self.N

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayPattern):
            return NotImplemented
        return bool(np.array_equal(self._v, other._v))

    def __hash__(self) -> int:
        return hash(self._v.tobytes())

    def __repr__(self) -> str:
        return f"GrayPattern({self._v.tolist()!r})"


def as_pattern(p) -> BinaryPattern:
    if isinstance(p, BinaryPattern):
        return p
    if isinstance(p, str):
        return BinaryPattern.from_string(p)
    return BinaryPattern(p)


def _check_same_dim(*pats) -> None:
    dims = {p.N for p in pats}
    if len(dims) > 1:
        raise DimensionMismatch(f"patterns have differing dimensions {sorted(dims)}")


def hamming(a: BinaryPattern, b: BinaryPattern) -> int:
    _check_same_dim(a, b)
    return int(np.count_nonzero(a.entries != b.entries))


def sign_equivalent(a: BinaryPattern, b: BinaryPattern) -> bool:
    _check_same_dim(a, b)
    d = hamming(a, b)
    return d == 0 or d == a.N


def _as_tuple(mask: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(mask))


class _IndexSets:
    def sizes(self) -> dict[str, int]:
        return {f.name: len(getattr(self, f.name)) for f in fields(self)
                if getattr(self, f.name) is not None}

    def one_based(self) -> dict[str, tuple[int, ...]]:
        return {f.name: tuple(i + 1 for i in getattr(self, f.name))
                for f in fields(self) if getattr(self, f.name) is not None}


@dataclass(frozen=True)
class TwoMemoryIndexSets(_IndexSets):
    """I1 = agreement, I2 = disagreement of two memories; refinements vs a probe.

    I11 = {i in I1 : eta_i = xi1_i}, I12 = {i in I1 : eta_i = -xi1_i},
    I21 = {i in I2 : eta_i = xi1_i}, I22 = {i in I2 : eta_i = -xi1_i};
    the +/- suffix splits by the sign of xi1_i. Refinements are None when no
    probe was given, and empty tuples (never omitted) when a probe was given.
    """

    I1: tuple[int, ...]
    I2: tuple[int, ...]
    I11p: tuple[int, ...] | None = None
    I11m: tuple[int, ...] | None = None
    I12p: tuple[int, ...] | None = None
    I12m: tuple[int, ...] | None = None
    I21p: tuple[int, ...] | None = None
    I21m: tuple[int, ...] | None = None
    I22p: tuple[int, ...] | None = None
    I22m: tuple[int, ...] | None = None

    @property
    def I11(self) -> tuple[int, ...]:
        return tuple(sorted(self.I11p + self.I11m))

    @property
    def I12(self) -> tuple[int, ...]:
        return tuple(sorted(self.I12p + self.I12m))

    @property
    def I21(self) -> tuple[int, ...]:
        return tuple(sorted(self.I21p + self.I21m))

    @property
    def I22(self) -> tuple[int, ...]:
        return tuple(sorted(self.I22p + self.I22m))


@dataclass(frozen=True)
class ThreeMemoryIndexSets(_IndexSets):
    """J-sets of three memories, with xi1 as the reference memory.

    J1 = {xi2 = xi3}, J2 = {xi2 = -xi3}; J11/J12 split J1 by xi2 = +/-xi1,
    J21/J22 split J2 by xi2 = +/-xi1; +/- suffix is the sign of xi2 there.
    """

    J1: tuple[int, ...]
    J2: tuple[int, ...]
    J11p: tuple[int, ...]
    J11m: tuple[int, ...]
    J12p: tuple[int, ...]
    J12m: tuple[int, ...]
    J21p: tuple[int, ...]
    J21m: tuple[int, ...]
    J22p: tuple[int, ...]
    J22m: tuple[int, ...]

    @property
    def J11(self) -> tuple[int, ...]:
        return tuple(sorted(self.J11p + self.J11m))

    @property
    def J12(self) -> tuple[int, ...]:
        return tuple(sorted(self.J12p + self.J12m))

    @property
    def J21(self) -> tuple[int, ...]:
        return tuple(sorted(self.J21p + self.J21m))

    @property
    def J22(self) -> tuple[int, ...]:
        return tuple(sorted(self.J22p + self.J22m))


def index_sets_two(xi1: BinaryPattern, xi2: BinaryPattern,
                   eta: BinaryPattern | None = None) -> TwoMemoryIndexSets:
    if eta is None:
        _check_same_dim(xi1, xi2)
    else:
        _check_same_dim(xi1, xi2, eta)
    if sign_equivalent(xi1, xi2):
        raise AntipodalMemories("xi1 = +/-xi2; the two memories encode one pattern")
    a, b = xi1.entries, xi2.entries
    agree = a == b
    if eta is None:
        return TwoMemoryIndexSets(_as_tuple(agree), _as_tuple(~agree))
    e = eta.entries
    same = e == a
    pos = a > 0
    return TwoMemoryIndexSets(
        I1=_as_tuple(agree),
        I2=_as_tuple(~agree),
        I11p=_as_tuple(agree & same & pos),
        I11m=_as_tuple(agree & same & ~pos),
        I12p=_as_tuple(agree & ~same & pos),
        I12m=_as_tuple(agree & ~same & ~pos),
        I21p=_as_tuple(~agree & same & pos),
        I21m=_as_tuple(~agree & same & ~pos),
        I22p=_as_tuple(~agree & ~same & pos),
        I22m=_as_tuple(~agree & ~same & ~pos),
    )


def index_sets_three(xi1: BinaryPattern, xi2: BinaryPattern,
                     xi3: BinaryPattern) -> ThreeMemoryIndexSets:
    """J-sets for (xi1, xi2, xi3).

    Only exact antipodes (xi^k = -xi^l) are rejected here; equal memories give
    an empty J2 and are left for the callers that need the stronger hypothesis.
    """
    _check_same_dim(xi1, xi2, xi3)
    pats = (xi1, xi2, xi3)
    for k in range(3):
        for l in range(k + 1, 3):
            if hamming(pats[k], pats[l]) == xi1.N:
                raise AntipodalMemories(f"memory {k + 1} = -memory {l + 1}")
    a, b, c = xi1.entries, xi2.entries, xi3.entries
    j1 = b == c
    with_1 = b == a
    pos = a > 0
    return ThreeMemoryIndexSets(
        J1=_as_tuple(j1),
        J2=_as_tuple(~j1),
        J11p=_as_tuple(j1 & with_1 & pos),
        J11m=_as_tuple(j1 & with_1 & ~pos),
        J12p=_as_tuple(j1 & ~with_1 & ~pos),
        J12m=_as_tuple(j1 & ~with_1 & pos),
        J21p=_as_tuple(~j1 & with_1 & pos),
        J21m=_as_tuple(~j1 & with_1 & ~pos),
        J22p=_as_tuple(~j1 & ~with_1 & ~pos),
        J22m=_as_tuple(~j1 & ~with_1 & pos),
    )


def all_sign_classes(N: int) -> np.ndarray:
    """Every pattern of length N with first entry +1, as rows of a (2**(N-1), N) array."""
    k = N - 1
    codes = np.arange(2 ** k, dtype=np.int64)[:, None]
    bits = (codes >> np.arange(k - 1, -1, -1)) & 1
    out = np.ones((2 ** k, N), dtype=np.int8)
    out[:, 1:] = 1 - 2 * bits.astype(np.int8)
    return out


def random_pattern(rng: np.random.Generator, N: int) -> BinaryPattern:
    return BinaryPattern(rng.choice(np.array([-1, 1], dtype=np.int8), size=N))


def stack(patterns: Sequence[BinaryPattern]) -> np.ndarray:
    """(M, N) float matrix whose rows are the patterns."""
    _check_same_dim(*patterns)
    return np.vstack([p.entries for p in patterns]).astype(float)
