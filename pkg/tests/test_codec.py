from __future__ import annotations

import numpy as np
import pytest

from i2ic.codec import (
    block_methods,
    choose_mode,
    decode_bytes,
    decode_plane,
    encode_bytes,
    encode_plane,
    pad_plane,
)
from i2ic.container import CodedStream
from i2ic.errors import DimensionError, MalformedStream
from i2ic.prediction import IntraMode, predict_block
from i2ic.residual import (
    HV_MODES,
    ResidualMethod,
    SystemConfig,
    apply_method,
    method_for,
    scan_coefficients,
)
from i2ic.rice import rice_bitstring
from i2ic.synth import synth_ar1

CONFIGS = list(SystemConfig)

_y, _x = np.mgrid[0:8, 0:8]
IMG8 = 40 + 12 * _x + 5 * _y + (_x * _y * 7) % 11

GOLDEN_MODES = {
    SystemConfig.SKIP: [0, 4, 3, 1],
    SystemConfig.RDPCM: [3, 4, 3, 3],
    SystemConfig.I2IDCT: [0, 1, 3, 6],
    SystemConfig.I2IDCT_RDPCM: [0, 1, 3, 3],
    SystemConfig.I2IDST: [0, 3, 3, 6],
    SystemConfig.I2IDST_RDPCM: [3, 6, 3, 3],
}


def exhaustive_modes(img, cfg):
    """Per-block cheapest mode found by coding every mode with the scalar coder."""
    modes = []
    for y in range(0, img.shape[0], 4):
        for x in range(0, img.shape[1], 4):
            orig = img[y : y + 4, x : x + 4]
            costs = []
            for mode in IntraMode:
                method = method_for(mode, cfg)
                r = orig - predict_block(img, (y, x), mode)
                vals = scan_coefficients(apply_method(r, method, mode), method)
                costs.append(3 + len(rice_bitstring(vals.tolist())))
            modes.append(int(np.argmin(costs)))
    return modes


@pytest.mark.parametrize("cfg", CONFIGS)
def test_golden_modes(cfg):
    stream = encode_plane(IMG8, cfg)
    got = [int(m) for m, _ in block_methods(stream)]
    assert got == exhaustive_modes(IMG8, cfg) == GOLDEN_MODES[cfg]


@pytest.mark.parametrize("cfg", CONFIGS)
def test_bit_accounting(cfg):
    img = synth_ar1(20, 12, 0.95, 3).astype(np.int64)
    stream = encode_plane(img, cfg)
    plane = pad_plane(img)
    total = 0
    for y in range(0, plane.shape[0], 4):
        for x in range(0, plane.shape[1], 4):
            total += choose_mode(plane[y : y + 4, x : x + 4], plane, (y, x), cfg)[1]
    assert stream.payload_bits == total
    assert len(stream.payload) == -(-total // 8)


def test_choose_mode_examples():
    plane = np.zeros((8, 8), dtype=np.int64)
    plane[4:8, 3] = [10, 20, 30, 40]
    plane[3, 4:8] = [1, 2, 3, 4]
    block = predict_block(plane, (4, 4), IntraMode.Horizontal)
    mode, bits = choose_mode(block, plane, (4, 4), SystemConfig.SKIP)
    assert mode is IntraMode.Horizontal and bits == 3 + 16
    flat = np.full((8, 8), 77)
    mode, bits = choose_mode(flat[4:, 4:], flat, (4, 4), SystemConfig.I2IDST)
    assert mode is IntraMode.DC and bits == 3 + 16


# the lone block is predicted as 128, so every value escapes or nearly does
CONSTANT_4X4_BYTES = {
    SystemConfig.SKIP: 39,
    SystemConfig.RDPCM: 36,
    SystemConfig.I2IDCT: 33,
    SystemConfig.I2IDCT_RDPCM: 33,
    SystemConfig.I2IDST: 38,
    SystemConfig.I2IDST_RDPCM: 36,
}


@pytest.mark.parametrize("cfg", CONFIGS)
def test_constant_4x4(cfg):
    img = np.full((4, 4), 200)
    data = encode_bytes(img, cfg)
    assert np.array_equal(decode_bytes(data), img)
    assert len(data) == CONSTANT_4X4_BYTES[cfg]


@pytest.mark.parametrize("cfg", CONFIGS)
def test_random_round_trip(cfg):
    rng = np.random.default_rng(int(cfg))
    img = rng.integers(0, 256, (64, 64))
    assert np.array_equal(decode_plane(encode_plane(img, cfg)), img)


@pytest.mark.parametrize("shape", [(1, 1), (3, 5), (7, 9), (13, 4)])
def test_odd_sizes(shape):
    img = np.random.default_rng(sum(shape)).integers(0, 256, shape)
    for cfg in CONFIGS:
        out = decode_bytes(encode_bytes(img, cfg))
        assert out.shape == img.shape and np.array_equal(out, img)


def test_extreme_images():
    for img in (np.zeros((16, 16)), np.full((16, 16), 255), np.indices((16, 16)).sum(0) % 2 * 255):
        for cfg in CONFIGS:
            assert np.array_equal(decode_bytes(encode_bytes(img, cfg)), img)


@pytest.mark.parametrize("cfg", [SystemConfig.I2IDCT_RDPCM, SystemConfig.I2IDST_RDPCM])
def test_hybrid_rule_visible_in_stream(cfg):
    stream = encode_plane(synth_ar1(32, 32, 0.9, 5), cfg)
    pairs = block_methods(stream)
    transform = ResidualMethod.I2iDct if cfg is SystemConfig.I2IDCT_RDPCM else ResidualMethod.I2iDst
    for mode, method in pairs:
        assert method is (ResidualMethod.Rdpcm if mode in HV_MODES else transform)
    assert {m for _, m in pairs} == {ResidualMethod.Rdpcm, transform}


def test_bad_dimensions():
    with pytest.raises(DimensionError):
        encode_plane(np.zeros((0, 4)), SystemConfig.SKIP)
    with pytest.raises(DimensionError):
        encode_plane(np.zeros((4, 4, 3)), SystemConfig.SKIP)
    with pytest.raises(ValueError):
        encode_plane(np.full((4, 4), 256), SystemConfig.SKIP)


def test_malformed_payloads():
    data = encode_bytes(synth_ar1(16, 16, 0.95, 1), SystemConfig.I2IDST)
    with pytest.raises(MalformedStream):
        decode_bytes(data[:-2])
    with pytest.raises(MalformedStream):
        decode_bytes(data + b"\x00")
    with pytest.raises(MalformedStream):
        decode_bytes(data[:15])
    # invalid mode 7 in the first block
    with pytest.raises(MalformedStream):
        decode_bytes(data[:15] + bytes([0xE0]) + data[16:])


def test_corruption_never_escapes_as_other_errors():
    data = bytearray(encode_bytes(synth_ar1(16, 16, 0.95, 2), SystemConfig.I2IDCT_RDPCM))
    rng = np.random.default_rng(0)
    for _ in range(300):
        bad = bytearray(data)
        pos = int(rng.integers(15, len(bad)))
        bad[pos] ^= 1 << int(rng.integers(0, 8))
        try:
            decode_bytes(bytes(bad))
        except MalformedStream:
            pass


def test_stream_fields():
    img = synth_ar1(10, 6, 0.9, 4)
    s = encode_plane(img, SystemConfig.RDPCM)
    back = CodedStream.from_bytes(s.to_bytes())
    assert (back.width, back.height, back.bit_depth, back.config) == (10, 6, 8, SystemConfig.RDPCM)
    assert back.payload == s.payload
