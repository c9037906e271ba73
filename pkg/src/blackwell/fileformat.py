"""Plain-text matrix files.

One row per line, entries separated by whitespace, each an integer or a
``p/q`` fraction.  Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .channel import Channel, make_channel
from .exact_linear import Matrix

_ENTRY = re.compile(r"[+-]?\d+(/\d+)?")


class MatrixFileError(ValueError):
    def __init__(self, message: str, line: int, column: int, source: str = "<text>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


def parse_matrix(text: str, source: str = "<text>") -> Matrix:
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = []
        for m in re.finditer(r"\S+", line):
            token, col = m.group(), m.start() + 1
            if not _ENTRY.fullmatch(token):
                raise MatrixFileError(f"bad entry {token!r}; expected an integer or p/q", lineno, col, source)
            try:
                row.append(Fraction(token))
            except ZeroDivisionError:
                raise MatrixFileError(f"zero denominator in {token!r}", lineno, col, source) from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFileError(f"row has {len(row)} entries, expected {width}", lineno, 1, source)
        rows.append(tuple(row))
    if not rows:
        raise MatrixFileError("no matrix rows found", 1, 1, source)
    return tuple(rows)


def format_fraction(v: Fraction) -> str:
    return str(v)


def format_matrix(m: Sequence[Sequence[Fraction]]) -> str:
    return "".join(" ".join(format_fraction(v) for v in row) + "\n" for row in m)


def read_matrix(path) -> Matrix:
    path = Path(path)
    return parse_matrix(path.read_text(), str(path))


def read_channel(path) -> Channel:
    return make_channel(read_matrix(path))


def read_vector(path) -> tuple[Fraction, ...]:
    """All entries of the file in reading order (a prior may span one line or several)."""
    return tuple(v for row in read_matrix(path) for v in row)
