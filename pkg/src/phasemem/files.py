"""Plain-text pattern files.

Binary::

    P±1 <width> <height>
    <height lines of <width> characters, '#' = +1, '.' = -1>

Gray::

    G <width> <height>
    <height lines of <width> whitespace-separated reals in [-1, 1]>

Entries are flattened row-major. Canonical files (as written by ``save_pattern``)
end with a newline and round-trip byte for byte.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, RangeError
from .patterns import BinaryPattern, GrayPattern

BINARY_TAG = "P±1"
GRAY_TAG = "G"
_HEADER = re.compile(r"^(\S+)\s+(\d+)\s+(\d+)\s*$")


@dataclass(frozen=True)
class PatternFile:
    pattern: BinaryPattern | GrayPattern
    width: int
    height: int

    @property
    def is_binary(self) -> bool:
        return isinstance(self.pattern, BinaryPattern)


def _parse_header(line: str) -> tuple[str, int, int]:
    m = _HEADER.match(line)
    if not m:
        raise ParseError(f"expected '{BINARY_TAG} <width> <height>' or '{GRAY_TAG} <width> <height>', "
                         f"got {line!r}", 1, 1)
    tag, w, h = m.group(1), int(m.group(2)), int(m.group(3))
    if tag not in (BINARY_TAG, GRAY_TAG):
        raise ParseError(f"unknown pattern tag {tag!r}", 1, 1)
    if w < 1 or h < 1:
        raise ParseError("width and height must be positive", 1, m.start(2) + 1)
    return tag, w, h


def parse_pattern(text: str) -> PatternFile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty pattern file", 1, 1)
    tag, w, h = _parse_header(lines[0])
    body = lines[1:]
    if len(body) < h:
        raise ParseError(f"expected {h} rows, found {len(body)}", len(lines) + 1)
    if len(body) > h:
        raise ParseError(f"unexpected extra row (header declares {h})", h + 2, 1)
    values: list[float] = []
    for r, row in enumerate(body):
        lineno = r + 2
        row = row.rstrip("\r")
        if tag == BINARY_TAG:
            for c, ch in enumerate(row):
                if c >= w:
                    raise ParseError(f"row longer than width {w}", lineno, c + 1)
                if ch == "#":
                    values.append(1)
                elif ch == ".":
                    values.append(-1)
                else:
                    raise ParseError(f"unexpected character {ch!r}", lineno, c + 1)
            if len(row) < w:
                raise ParseError(f"row has {len(row)} cells, expected {w}", lineno, len(row) + 1)
        else:
            tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", row)]
            if len(tokens) != w:
                col = tokens[w][0] if len(tokens) > w else len(row) + 1
                raise ParseError(f"row has {len(tokens)} values, expected {w}", lineno, col)
            for col, tok in tokens:
                try:
                    x = float(tok)
                except ValueError:
                    raise ParseError(f"not a number: {tok!r}", lineno, col) from None
                if not (math.isfinite(x) and -1.0 <= x <= 1.0):
                    raise RangeError(f"gray value {tok} outside [-1, 1]", lineno, col)
                values.append(x)
    if tag == BINARY_TAG:
        if w * h < 2:
            raise ParseError("binary pattern needs at least two cells", 1, 1)
        pat: BinaryPattern | GrayPattern = BinaryPattern(np.array(values, dtype=np.int8))
    else:
        pat = GrayPattern(np.array(values, dtype=float))
    return PatternFile(pat, w, h)


def format_pattern(pattern: BinaryPattern | GrayPattern, width: int | None = None,
                   height: int | None = None) -> str:
    N = pattern.N
    width = N if width is None else int(width)
    height = N // width if height is None else int(height)
    if width * height != N:
        raise ValueError(f"{width}x{height} does not match N={N}")
    v = pattern.entries
    rows = [v[r * width:(r + 1) * width] for r in range(height)]
    if isinstance(pattern, BinaryPattern):
        body = ["".join("#" if x > 0 else "." for x in row) for row in rows]
        tag = BINARY_TAG
    else:
        body = [" ".join(repr(float(x)) for x in row) for row in rows]
        tag = GRAY_TAG
    return "\n".join([f"{tag} {width} {height}", *body]) + "\n"


def read_pattern_file(path: str | os.PathLike) -> PatternFile:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_pattern(fh.read())


def load_pattern(path: str | os.PathLike) -> BinaryPattern | GrayPattern:
    return read_pattern_file(path).pattern


def save_pattern(path: str | os.PathLike, pattern: BinaryPattern | GrayPattern,
                 width: int | None = None, height: int | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_pattern(pattern, width, height))
