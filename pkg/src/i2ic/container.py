"""The ``.i2ic`` container: a fixed 15-byte header followed by the payload bits.

Header layout (integers little-endian)::

    magic     4 bytes  b"I2IC"
    version   u8       1
    width     u32
    height    u32
    bit_depth u8
    config    u8       SystemConfig value
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import MalformedStream
from .residual import SystemConfig

MAGIC = b"I2IC"
VERSION = 1
_HEADER = struct.Struct("<4sBIIBB")
HEADER_BYTES = _HEADER.size


@dataclass(frozen=True)
class CodedStream:
    width: int
    height: int
    bit_depth: int
    config: SystemConfig
    payload: bytes
    payload_bits: int

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(
            MAGIC, VERSION, self.width, self.height, self.bit_depth, int(self.config)
        )
        return header + self.payload

    @property
    def total_bits(self) -> int:
        return 8 * HEADER_BYTES + self.payload_bits

    @classmethod
    def from_bytes(cls, data: bytes) -> "CodedStream":
        """Parse the header; payload validity is checked by the decoder."""
        if len(data) < HEADER_BYTES:
            raise MalformedStream(f"stream of {len(data)} bytes is shorter than the header")
        magic, version, width, height, bit_depth, config = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise MalformedStream(f"bad magic {magic!r}")
        if version != VERSION:
            raise MalformedStream(f"unsupported version {version}")
        try:
            cfg = SystemConfig(config)
        except ValueError:
            raise MalformedStream(f"unknown system config id {config}") from None
        if not 1 <= bit_depth <= 16:
            raise MalformedStream(f"bit depth {bit_depth} out of range")
        if width == 0 or height == 0:
            raise MalformedStream("zero image dimension")
        payload = bytes(data[HEADER_BYTES:])
        return cls(width, height, bit_depth, cfg, payload, 8 * len(payload))
