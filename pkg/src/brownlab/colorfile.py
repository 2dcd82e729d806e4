"""Coloring file format: a one-line header plus a plain or run-length body.

Header: ``palette <r> length <n> encoding <plain|rle>``.  The body holds
whitespace-separated tokens, color indices for ``plain`` and
``<value>x<count>`` tokens for ``rle``.  Encoding a coloring and decoding
the bytes back is the identity, and re-encoding a canonical file
reproduces it byte for byte.
"""

from __future__ import annotations

import re

from .core import Coloring
from .errors import ColoringFileError, InvalidArgumentError

_TOKENS_PER_LINE = 64
_RLE_TOKEN = re.compile(r"^(\d+)x(\d+)$")


def rle_encode(values) -> list:
    """Collapse a sequence into (value, count) pairs."""
    pairs: list[tuple[int, int]] = []
    for v in values:
        if pairs and pairs[-1][0] == v:
            pairs[-1] = (v, pairs[-1][1] + 1)
        else:
            pairs.append((v, 1))
    return pairs


def rle_decode(pairs) -> list:
    out: list[int] = []
    for value, count in pairs:
        if count < 1:
            raise InvalidArgumentError("run lengths must be >= 1")
        out.extend([value] * count)
    return out


def rle_string(values) -> str:
    """Space-separated ``<value>x<count>`` tokens (canonical certificate form)."""
    return " ".join(f"{v}x{c}" for v, c in rle_encode(values))


def parse_rle_string(text: str) -> list:
    pairs = []
    for token in text.split():
        m = _RLE_TOKEN.match(token)
        if not m:
            raise InvalidArgumentError(f"bad run-length token {token!r}")
        pairs.append((int(m.group(1)), int(m.group(2))))
    return rle_decode(pairs)


def encode_coloring(coloring: Coloring, encoding: str = "auto") -> str:
    """Serialize a coloring; ``auto`` picks rle at 10**4 positions and beyond."""
    if encoding == "auto":
        encoding = "rle" if coloring.length >= 10_000 else "plain"
    if encoding not in ("plain", "rle"):
        raise InvalidArgumentError(f"unknown encoding {encoding!r}")
    header = f"palette {coloring.palette} length {coloring.length} encoding {encoding}"
    if encoding == "plain":
        tokens = [str(v) for v in coloring.values]
    else:
        tokens = [f"{v}x{c}" for v, c in rle_encode(coloring.values)]
    lines = [header]
    for i in range(0, len(tokens), _TOKENS_PER_LINE):
        lines.append(" ".join(tokens[i:i + _TOKENS_PER_LINE]))
    return "\n".join(lines) + "\n"


def _header_error(message: str, column: int) -> ColoringFileError:
    return ColoringFileError(message, 1, column)


def decode_coloring(text: str) -> Coloring:
    """Parse a coloring file; malformed input raises with line and column."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise _header_error("missing header line", 1)
    header = lines[0]
    fields = header.split()
    if len(fields) != 6 or fields[0] != "palette" or fields[2] != "length" or fields[4] != "encoding":
        raise _header_error("header must read 'palette <r> length <n> encoding <plain|rle>'", 1)
    if not fields[1].isdigit():
        raise _header_error("palette must be a natural", header.index(fields[1]) + 1)
    if not fields[3].isdigit():
        raise _header_error("length must be a natural", header.index(fields[3]) + 1)
    palette = int(fields[1])
    length = int(fields[3])
    encoding = fields[5]
    if encoding not in ("plain", "rle"):
        raise _header_error(f"unknown encoding {encoding!r}", header.rindex(encoding) + 1)

    values: list[int] = []
    for lineno, line in enumerate(lines[1:], start=2):
        for match in re.finditer(r"\S+", line):
            token = match.group(0)
            column = match.start() + 1
            if encoding == "plain":
                if not token.isdigit():
                    raise ColoringFileError(f"expected a color index, got {token!r}", lineno, column)
                value, count = int(token), 1
            else:
                m = _RLE_TOKEN.match(token)
                if not m:
                    raise ColoringFileError(f"expected <value>x<count>, got {token!r}", lineno, column)
                value, count = int(m.group(1)), int(m.group(2))
                if count < 1:
                    raise ColoringFileError("run length must be >= 1", lineno, column)
            if value >= palette:
                raise ColoringFileError(
                    f"value {value} outside palette of size {palette}", lineno, column)
            values.extend([value] * count)
            if len(values) > length:
                raise ColoringFileError(
                    f"body exceeds declared length {length}", lineno, column)
    if len(values) != length:
        raise _header_error(
            f"body holds {len(values)} positions but header declares {length}",
            header.index(fields[3]) + 1)
    return Coloring(palette=palette, values=tuple(values))
