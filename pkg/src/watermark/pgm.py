from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from ..errors import MalformedPgm
from .grid import SensorGrid

_WHITESPACE = b" \t\r\n\v\f"
_COMMENT = re.compile(rb"#[^\n]*")


def _header(data: bytes, count: int) -> tuple[list[bytes], int]:
    """The first `count` header tokens and the offset just past the last one."""
    tokens: list[bytes] = []
    i = 0
    while len(tokens) < count:
        while i < len(data) and data[i] in _WHITESPACE:
            i += 1
        if i < len(data) and data[i:i + 1] == b"#":
            while i < len(data) and data[i:i + 1] != b"\n":
                i += 1
            continue
        if i >= len(data):
            raise MalformedPgm("truncated header")
        start = i
        while i < len(data) and data[i] not in _WHITESPACE and data[i:i + 1] != b"#":
            i += 1
        tokens.append(data[start:i])
    return tokens, i


def load_pgm(data: bytes) -> SensorGrid:
    """Plain (P2) or raw (P5) graymap with maxval 255."""
    tokens, offset = _header(data, 4)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise MalformedPgm(f"unsupported magic {magic!r}")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise MalformedPgm("non-numeric header field") from None
    if width < 1 or height < 1:
        raise MalformedPgm(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise MalformedPgm(f"maxval must be 255, got {maxval}")
    n = width * height

    if magic == b"P5":
        raster = data[offset + 1:offset + 1 + n]   # one whitespace byte after maxval
        if len(raster) != n:
            raise MalformedPgm(f"raster has {len(raster)} bytes, expected {n}")
        values = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = _COMMENT.sub(b"", data[offset:]).split()
        if len(body) < n:
            raise MalformedPgm(f"raster has {len(body)} samples, expected {n}")
        try:
            samples = np.array([int(t) for t in body[:n]])
        except ValueError:
            raise MalformedPgm("non-numeric sample") from None
        if samples.min() < 0 or samples.max() > 255:
            raise MalformedPgm("sample outside [0, 255]")
        values = samples.astype(np.uint8)
    return SensorGrid(values.reshape(height, width).copy())


def save_pgm(grid: SensorGrid, binary: bool = True) -> bytes:
    header = f"{'P5' if binary else 'P2'}\n{grid.width} {grid.height}\n255\n".encode("ascii")
    if binary:
        return header + grid.values.tobytes()
    rows = (" ".join(str(v) for v in row) for row in grid.values)
    return header + "\n".join(rows).encode("ascii") + b"\n"


def read_pgm(path: Path) -> SensorGrid:
    return load_pgm(Path(path).read_bytes())


def write_pgm(grid: SensorGrid, path: Path, binary: bool = True) -> None:
    Path(path).write_bytes(save_pgm(grid, binary))
