"""A fixed corpus of six 8x8 glyphs ('#' = +1, '.' = -1) used by tests and demos."""

from __future__ import annotations

from .patterns import BinaryPattern

WIDTH = HEIGHT = 8

GLYPHS: dict[str, tuple[str, ...]] = {
    "ring": (
        "..####..",
        ".#....#.",
        "#......#",
        "#......#",
        "#......#",
        "#......#",
        ".#....#.",
        "..####..",
    ),
    "cross": (
        "#......#",
        ".#....#.",
        "..#..#..",
        "...##...",
        "...##...",
        "..#..#..",
        ".#....#.",
        "#......#",
    ),
    "plus": (
        "...##...",
        "...##...",
        "...##...",
        "########",
        "########",
        "...##...",
        "...##...",
        "...##...",
    ),
    "block": (
        "........",
        ".######.",
        ".######.",
        ".##..##.",
        ".##..##.",
        ".######.",
        ".######.",
        "........",
    ),
    "stripes": (
        "########",
        "........",
        "########",
        "........",
        "########",
        "........",
        "########",
        "........",
    ),
    "wedge": (
        "#.......",
        "##......",
        "###.....",
        "####....",
        "#####...",
        "######..",
        "#######.",
        "########",
    ),
}


def glyph(name: str) -> BinaryPattern:
    rows = GLYPHS[name]
    return BinaryPattern([1 if ch == "#" else -1 for row in rows for ch in row])


def corpus() -> list[BinaryPattern]:
    """The six glyphs in a fixed order."""
    return [glyph(n) for n in GLYPHS]
