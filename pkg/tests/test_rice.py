from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from i2ic.bitio import BitReader, BitWriter, bits_of, pack_codewords
from i2ic.errors import MagnitudeOverflow, MalformedEscape, TruncatedStream
from i2ic.rice import (
    RiceState,
    fold,
    rice_bitstring,
    rice_codewords,
    rice_cost,
    rice_decode,
    rice_encode,
    rice_parse,
    unfold,
)

BLOCK = [0, -3, 5, 1, 0, 0, -12, 40, 2, -1, 0, 7, -200, 3, 0, 9_000_000]


def reference_encode(vals):
    """One symbol at a time, state kept in two plain integers."""
    out, total, count = "", 0, 0
    for v in vals:
        u = 2 * v if v >= 0 else -2 * v - 1
        k = 0
        while count * 2**k < total:
            k += 1
        q = u >> k
        if q < 24:
            out += "1" * q + "0" + (format(u % 2**k, f"0{k}b") if k else "")
        else:
            out += "1" * 24 + "0" + format(u, "025b")
        total += u
        count += 1
    return out


GOLDEN = (
    "0111110110100010000000011111011111111111100000010000001000000111011111"
    "1111111111111111111000000000000000001100011110000110000000011111111111"
    "111111111111101000100101010100010000000"
)


def test_fold():
    assert [fold(v) for v in (0, -1, 1, -2, 2)] == [0, 1, 2, 3, 4]
    assert [unfold(fold(v)) for v in range(-50, 50)] == list(range(-50, 50))
    a = np.arange(-50, 50)
    assert np.array_equal(unfold(fold(a)), a)


def test_code_examples():
    assert rice_bitstring([0]) == "0"
    assert rice_bitstring([-3], RiceState(2, 1)) == "1101"  # k = 1
    assert rice_parse("0", 1) == [0]


def test_state():
    s = RiceState()
    assert s.k == 0
    s.update(5)
    assert s.k == 3
    s.update(0)
    assert (s.total, s.count, s.k) == (5, 2, 2)


def test_golden_block():
    assert reference_encode(BLOCK) == GOLDEN
    assert rice_bitstring(BLOCK) == GOLDEN
    assert rice_parse(GOLDEN) == BLOCK
    assert rice_cost(np.array([BLOCK]))[0] == len(GOLDEN)


def test_escape_layout():
    bits = rice_bitstring([100])  # u = 200 at k = 0
    assert bits == "1" * 24 + "0" + format(200, "025b")


def test_magnitude_limit():
    rice_bitstring([2**24 - 1, -(2**24 - 1)])
    with pytest.raises(MagnitudeOverflow):
        rice_bitstring([2**24])
    with pytest.raises(MagnitudeOverflow):
        rice_cost(np.array([[-(2**24)]]))


def test_malformed_escape():
    with pytest.raises(MalformedEscape):
        rice_parse("1" * 25 + "0" * 25, 1)
    # value 3 fits the regular code, so escaping it is not canonical
    with pytest.raises(MalformedEscape):
        rice_parse("1" * 24 + "0" + format(6, "025b"), 1)


def test_truncated():
    with pytest.raises(TruncatedStream):
        rice_parse(GOLDEN[:-1])
    with pytest.raises(TruncatedStream):
        rice_parse("111", 1)


def test_vectorized_codewords_match():
    rng = np.random.default_rng(0)
    vals = rng.integers(-3, 4, (300, 16)) * 10 ** rng.integers(0, 7, (300, 16))
    codes, lengths = rice_codewords(vals)
    data, nbits = pack_codewords(codes, lengths)
    assert bits_of(data)[:nbits] == "".join(reference_encode(r) for r in vals.tolist())


def test_random_round_trip():
    rng = np.random.default_rng(1)
    vals = rng.integers(-3, 4, (100_000, 16)) * 2 ** rng.integers(0, 12, (100_000, 16))
    codes, lengths = rice_codewords(vals)
    data, nbits = pack_codewords(codes, lengths)
    reader = BitReader(data, total_bits=nbits)
    for row in vals[:5000].tolist():
        assert rice_decode(reader) == row


@given(st.lists(st.integers(-(2**24) + 1, 2**24 - 1), min_size=16, max_size=16))
def test_round_trip_property(vals):
    w = BitWriter()
    rice_encode(vals, w)
    assert rice_decode(BitReader(w.getvalue(), total_bits=w.bits_written)) == vals


def test_bit_writer_reader():
    w = BitWriter()
    w.write(5, 3)
    w.write_ones(4)
    w.write(0, 2)
    assert w.bits_written == 9 and w.getvalue() == bytes([0b10111110, 0])
    r = BitReader(w.getvalue())
    assert (r.read(3), r.read_unary(10), r.read(1)) == (5, 4, 0)
    with pytest.raises(ValueError):
        w.write(8, 3)
