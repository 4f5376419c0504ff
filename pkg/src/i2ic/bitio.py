"""MSB-first bit writer and reader."""

from __future__ import annotations

import numpy as np

from .errors import TruncatedStream

MAX_CODEWORD_BITS = 62


class BitWriter:
    def __init__(self):
        self._buf = bytearray()
        self._acc = 0
        self._nacc = 0
        self.bits_written = 0

    def write(self, value: int, nbits: int) -> None:
        if nbits == 0:
            return
        if value < 0 or value >> nbits:
            raise ValueError(f"{value} does not fit in {nbits} bits")
        self._acc = (self._acc << nbits) | value
        self._nacc += nbits
        self.bits_written += nbits
        while self._nacc >= 8:
            self._nacc -= 8
            self._buf.append((self._acc >> self._nacc) & 0xFF)
        self._acc &= (1 << self._nacc) - 1

    def write_ones(self, count: int) -> None:
        self.write((1 << count) - 1, count)

    def getvalue(self) -> bytes:
        """Bytes written so far, last byte zero-padded."""
        if self._nacc:
            return bytes(self._buf) + bytes([(self._acc << (8 - self._nacc)) & 0xFF])
        return bytes(self._buf)

    def bitstring(self) -> str:
        data = self.getvalue()
        return bits_of(data)[: self.bits_written]


def bits_of(data: bytes) -> str:
    """``data`` as a string of '0' and '1' characters."""
    if not data:
        return ""
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8)).tobytes().translate(_ASCII).decode()


_ASCII = bytes.maketrans(b"\x00\x01", b"01")


def pack_codewords(codes: np.ndarray, lengths: np.ndarray) -> tuple:
    """Concatenate codewords MSB-first; returns ``(bytes, nbits)``.

    ``codes[i]`` holds its ``lengths[i]`` low bits; lengths may be zero.
    """
    codes = np.asarray(codes, dtype=np.int64).ravel()
    lengths = np.asarray(lengths, dtype=np.int64).ravel()
    if lengths.size and int(lengths.max()) > MAX_CODEWORD_BITS:
        raise ValueError("codeword longer than 62 bits")
    width = int(lengths.max()) if lengths.size else 0
    if width == 0:
        return b"", 0
    shifts = lengths[:, None] - 1 - np.arange(width)[None, :]
    valid = shifts >= 0
    bits = (codes[:, None] >> np.where(valid, shifts, 0)) & 1
    flat = bits[valid].astype(np.uint8)
    return np.packbits(flat).tobytes(), int(flat.size)


class BitReader:
    """Reads from a bit string built once from the input bytes."""

    def __init__(self, data: bytes, start_bit: int = 0, total_bits: int | None = None):
        self._bits = bits_of(data)
        self.pos = start_bit
        self.total_bits = len(self._bits) if total_bits is None else total_bits

    @classmethod
    def from_bitstring(cls, bits: str) -> "BitReader":
        reader = cls(b"")
        reader._bits = bits
        reader.total_bits = len(bits)
        return reader

    def read_bit(self) -> int:
        if self.pos >= self.total_bits:
            raise TruncatedStream("ran out of bits")
        bit = self._bits[self.pos] == "1"
        self.pos += 1
        return int(bit)

    def read(self, nbits: int) -> int:
        if nbits == 0:
            return 0
        end = self.pos + nbits
        if end > self.total_bits:
            raise TruncatedStream(f"needed {nbits} bits, {self.total_bits - self.pos} left")
        value = int(self._bits[self.pos:end], 2)
        self.pos = end
        return value

    def read_unary(self, limit: int) -> int:
        """Count ones up to ``limit``; consumes the terminating zero if one is seen first."""
        end = min(self.pos + limit, self.total_bits)
        z = self._bits.find("0", self.pos, end)
        if z >= 0:
            q = z - self.pos
            self.pos = z + 1
            return q
        if end - self.pos < limit:
            raise TruncatedStream("ran out of bits inside a unary prefix")
        self.pos = end
        return limit

    def remaining(self) -> int:
        return self.total_bits - self.pos

    def rest_is_zero(self) -> bool:
        return "1" not in self._bits[self.pos:self.total_bits]
