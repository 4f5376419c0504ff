"""Adaptive Golomb-Rice coding of one block's 16 residual values.

Values are folded to unsigned (0, -1, 1, -2, ... -> 0, 1, 2, 3, ...).  The
Rice parameter ``k`` is the smallest with ``count * 2**k >= sum`` over the
folded values already coded in the block, so the first value of every
block uses ``k = 0``.  A quotient of 24 or more is escaped: 24 ones, a
zero, then the folded value as a fixed 25-bit field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitio import BitReader, BitWriter
from .errors import MagnitudeOverflow, MalformedEscape

ESCAPE_Q = 24
ESCAPE_BITS = 25
MAX_MAGNITUDE = 1 << 24
MAX_K = ESCAPE_BITS


def fold(v):
    """Signed to unsigned: ``2v`` for ``v >= 0``, ``-2v - 1`` otherwise."""
    if isinstance(v, np.ndarray):
        return np.where(v >= 0, 2 * v, -2 * v - 1)
    return 2 * v if v >= 0 else -2 * v - 1


def unfold(u):
    if isinstance(u, np.ndarray):
        return np.where(u & 1, -(u >> 1) - 1, u >> 1)
    return -(u >> 1) - 1 if u & 1 else u >> 1


@dataclass
class RiceState:
    total: int = 0
    count: int = 0

    @property
    def k(self) -> int:
        k = 0
        while (self.count << k) < self.total:
            k += 1
        return k

    def update(self, u: int) -> None:
        self.total += u
        self.count += 1


def encode_value(writer: BitWriter, v: int, state: RiceState) -> None:
    if abs(v) >= MAX_MAGNITUDE:
        raise MagnitudeOverflow(f"|{v}| >= 2**24")
    u = fold(int(v))
    k = state.k
    q = u >> k
    if q < ESCAPE_Q:
        writer.write_ones(q)
        writer.write(0, 1)
        writer.write(u & ((1 << k) - 1), k)
    else:
        writer.write_ones(ESCAPE_Q)
        writer.write(0, 1)
        writer.write(u, ESCAPE_BITS)
    state.update(u)


def decode_value(reader: BitReader, state: RiceState) -> int:
    k = state.k
    q = reader.read_unary(ESCAPE_Q)
    if q == ESCAPE_Q:
        if reader.read_bit():
            raise MalformedEscape("escape prefix longer than 24 ones")
        u = reader.read(ESCAPE_BITS)
        if u >> k < ESCAPE_Q:
            raise MalformedEscape("escaped value fits the regular code")
    else:
        u = (q << k) | reader.read(k)
    state.update(u)
    return unfold(u)


def rice_encode(vals, writer: BitWriter, state: RiceState | None = None) -> RiceState:
    state = RiceState() if state is None else state
    for v in vals:
        encode_value(writer, int(v), state)
    return state


def rice_decode(reader: BitReader, count: int = 16, state: RiceState | None = None) -> list:
    state = RiceState() if state is None else state
    return [decode_value(reader, state) for _ in range(count)]


def rice_bitstring(vals, state: RiceState | None = None) -> str:
    """Code ``vals`` and return the bits as a '0'/'1' string."""
    w = BitWriter()
    rice_encode(vals, w, state)
    return w.bitstring()


def rice_parse(bits: str, count: int = 16, state: RiceState | None = None) -> list:
    return rice_decode(BitReader.from_bitstring(bits), count, state)


def rice_codewords(vals: np.ndarray) -> tuple:
    """Codewords and lengths for each value; rows of ``vals`` (shape (..., L)) are blocks.

    Matches :func:`rice_encode` bit for bit, with the state reset per row.
    """
    vals = np.asarray(vals, dtype=np.int64)
    if vals.size and int(np.abs(vals).max()) >= MAX_MAGNITUDE:
        raise MagnitudeOverflow("value magnitude >= 2**24")
    u = fold(vals)
    total = np.zeros(vals.shape[:-1], dtype=np.int64)
    count = np.zeros_like(total)
    codes = np.empty_like(u)
    lengths = np.empty_like(u)
    for t in range(vals.shape[-1]):
        k = np.zeros_like(total)
        for kk in range(MAX_K + 1):
            k += (count << kk) < total
        ut = u[..., t]
        q = ut >> k
        normal = q < ESCAPE_Q
        prefix = (np.int64(1) << np.minimum(q, ESCAPE_Q)) - 1
        codes[..., t] = np.where(
            normal,
            (prefix << (k + 1)) | (ut & ((np.int64(1) << k) - 1)),
            (((np.int64(1) << ESCAPE_Q) - 1) << (ESCAPE_BITS + 1)) | ut,
        )
        lengths[..., t] = np.where(normal, q + 1 + k, ESCAPE_Q + 1 + ESCAPE_BITS)
        total += ut
        count += 1
    return codes, lengths


def rice_cost(vals: np.ndarray) -> np.ndarray:
    """Exact coded length in bits of each row of ``vals`` (shape (..., L))."""
    return rice_codewords(vals)[1].sum(axis=-1)
