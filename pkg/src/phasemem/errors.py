"""Exception hierarchy shared by all phasemem modules."""

from __future__ import annotations

__all__ = [
    "PhaseMemError",
    "DimensionMismatch",
    "AntipodalMemories",
    "NegativeEpsilon",
    "InvalidPattern",
    "OutOfRange",
    "NotSymmetric",
    "WrongMemoryCount",
    "IsMemory",
    "HypothesisViolated",
    "DegenerateOverlap",
    "NonFiniteState",
    "NoRetrieval",
    "AmbiguousRetrieval",
    "ParseError",
    "RangeError",
    "ParameterOutOfRange",
]


class PhaseMemError(Exception):
    """Base class for every error raised by phasemem."""


class DimensionMismatch(PhaseMemError, ValueError):
    pass


class AntipodalMemories(PhaseMemError, ValueError):
    """Two memories coincide up to sign, so they encode the same pattern."""


class NegativeEpsilon(PhaseMemError, ValueError):
    pass


class InvalidPattern(PhaseMemError, ValueError):
    pass


class OutOfRange(PhaseMemError, ValueError):
    """Gray value outside [-1, 1] handed to the phase initializer."""


class NotSymmetric(PhaseMemError, ValueError):
    pass


class WrongMemoryCount(PhaseMemError, ValueError):
    pass


class IsMemory(PhaseMemError, ValueError):
    """Probe pattern is a stored memory; use the memory spectrum instead."""


class HypothesisViolated(PhaseMemError, ValueError):
    pass


class DegenerateOverlap(PhaseMemError, ValueError):
    pass


class NonFiniteState(PhaseMemError, FloatingPointError):
    pass


class NoRetrieval(PhaseMemError):
    """Terminal state matched neither memory above the overlap threshold."""

    def __init__(self, message: str, round_index: int | None = None):
        super().__init__(message)
        self.round_index = round_index


class AmbiguousRetrieval(PhaseMemError):
    pass


class ParseError(PhaseMemError, ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


class RangeError(ParseError):
    pass


class ParameterOutOfRange(PhaseMemError, ValueError):
    pass
