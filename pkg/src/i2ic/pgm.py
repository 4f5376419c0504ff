"""Binary 8-bit PGM (P5) reading and writing."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import CorruptHeader, UnsupportedFormat

_TOKEN = re.compile(rb"(?:\s|#[^\n]*\n?)*([^\s#]+)")


def parse_pgm(data: bytes) -> np.ndarray:
    if len(data) < 2 or data[:1] != b"P":
        raise CorruptHeader("not a PNM file")
    if data[:2] != b"P5":
        raise UnsupportedFormat(f"only binary grayscale P5 is supported, got {data[:2].decode(errors='replace')}")
    pos = 2
    fields = []
    for _ in range(3):
        m = _TOKEN.match(data, pos)
        if not m:
            raise CorruptHeader("truncated header")
        try:
            fields.append(int(m.group(1)))
        except ValueError:
            raise CorruptHeader(f"bad header field {m.group(1)!r}") from None
        pos = m.end()
    width, height, maxval = fields
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise CorruptHeader("missing whitespace after maxval")
    pos += 1
    if width <= 0 or height <= 0:
        raise CorruptHeader(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedFormat(f"only maxval 255 is supported, got {maxval}")
    body = data[pos:]
    if len(body) < width * height:
        raise CorruptHeader(f"expected {width * height} samples, found {len(body)}")
    return np.frombuffer(body, dtype=np.uint8, count=width * height).reshape(height, width).copy()


def format_pgm(plane) -> bytes:
    plane = np.asarray(plane)
    if plane.ndim != 2:
        raise ValueError("PGM planes are 2D")
    if plane.min() < 0 or plane.max() > 255:
        raise ValueError("PGM samples must lie in [0, 255]")
    h, w = plane.shape
    return b"P5\n%d %d\n255\n" % (w, h) + plane.astype(np.uint8).tobytes()


def read_pgm(path) -> np.ndarray:
    return parse_pgm(Path(path).read_bytes())


def write_pgm(plane, path) -> None:
    Path(path).write_bytes(format_pgm(plane))
