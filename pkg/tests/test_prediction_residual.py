from __future__ import annotations

import numpy as np
import pytest

from i2ic.prediction import IntraMode, gather_references, predict_all, predict_block
from i2ic.residual import (
    RASTER,
    ZIGZAG,
    ResidualMethod,
    SystemConfig,
    method_for,
    process_residual,
    rdpcm_fwd,
    rdpcm_inv,
    scan_coefficients,
    unscan_coefficients,
)
from i2ic.transforms import TransformKind, transform_2d_fwd

H, V = IntraMode.Horizontal, IntraMode.Vertical


def test_first_block_is_mid_gray():
    plane = np.zeros((8, 8), dtype=np.int64)
    for mode in IntraMode:
        assert (predict_block(plane, (0, 0), mode) == 128).all()


def test_dc_of_constant_references():
    plane = np.full((8, 8), 128)
    assert (predict_block(plane, (4, 4), IntraMode.DC) == 128).all()


def test_horizontal_and_vertical_copy():
    plane = np.zeros((8, 8), dtype=np.int64)
    plane[4:8, 3] = [10, 20, 30, 40]
    plane[3, 4:8] = [1, 2, 3, 4]
    h = predict_block(plane, (4, 4), H)
    v = predict_block(plane, (4, 4), V)
    assert h.tolist() == [[10] * 4, [20] * 4, [30] * 4, [40] * 4]
    assert v.tolist() == [[1, 2, 3, 4]] * 4


def test_dc_uses_only_available_side():
    plane = np.zeros((8, 8), dtype=np.int64)
    plane[0:4, 3] = [1, 2, 3, 5]  # left of block (0, 4); no top
    assert (predict_block(plane, (0, 4), IntraMode.DC) == 2).all()  # floor(11/4)


def test_reference_layout_and_padding():
    plane = np.arange(64).reshape(8, 8)
    ref = gather_references(plane, [4], [4])[0]
    assert ref[8] == plane[3, 3]  # corner
    assert ref[9:13].tolist() == plane[3, 4:8].tolist()
    assert ref[13:].tolist() == [plane[3, 7]] * 4  # past the right edge
    assert ref[7:3:-1].tolist() == plane[4:8, 3].tolist()
    assert ref[3::-1].tolist() == [plane[7, 3]] * 4  # below-left repeats L3


def test_diagonals():
    plane = np.arange(144).reshape(12, 12)
    ref = gather_references(plane, [4], [4])[0]
    d34 = predict_block(plane, (4, 4), IntraMode.Diag34)
    d18 = predict_block(plane, (4, 4), IntraMode.Diag18)
    d2 = predict_block(plane, (4, 4), IntraMode.Diag2)
    for y in range(4):
        for x in range(4):
            assert d34[y, x] == ref[9 + x + y + 1]  # from the top-right
            assert d18[y, x] == ref[8 + x - y]  # from the top-left
            assert d2[y, x] == ref[7 - (x + y + 1)]  # from the bottom-left


def test_planar_of_flat_area_is_flat():
    plane = np.full((8, 8), 90)
    assert (predict_block(plane, (4, 4), IntraMode.Planar) == 90).all()


def test_predict_all_matches_single_blocks():
    plane = np.random.default_rng(0).integers(0, 256, (12, 16))
    ys, xs = np.mgrid[0:12:4, 0:16:4]
    preds = predict_all(plane, ys.ravel(), xs.ravel())
    for k, (y, x) in enumerate(zip(ys.ravel(), xs.ravel())):
        for mode in IntraMode:
            assert np.array_equal(preds[k, mode], predict_block(plane, (y, x), mode))


def test_rdpcm_examples():
    r = np.array([[3, 5, 2, 2]] * 4)
    assert rdpcm_fwd(r, H)[0].tolist() == [3, 2, -3, 0]
    assert rdpcm_inv(np.array([[3, 2, -3, 0]]), H)[0].tolist() == [3, 5, 2, 2]
    c = np.full((4, 4), 6)
    for d in (H, V):
        out = rdpcm_fwd(c, d)
        first = out[:, 0] if d == H else out[0]
        assert (first == 6).all() and np.count_nonzero(out) == 4
    assert (rdpcm_inv(np.zeros((4, 4)), V) == 0).all()


def test_rdpcm_rejects_other_modes():
    with pytest.raises(ValueError):
        rdpcm_fwd(np.zeros((4, 4)), IntraMode.DC)


def test_rdpcm_round_trip():
    r = np.random.default_rng(1).integers(-255, 256, (100_000, 4, 4))
    for d in (H, V):
        assert np.array_equal(rdpcm_inv(rdpcm_fwd(r, d), d), r)


def test_method_rules():
    assert method_for(H, SystemConfig.I2IDST_RDPCM) is ResidualMethod.Rdpcm
    assert method_for(IntraMode.DC, SystemConfig.I2IDST_RDPCM) is ResidualMethod.I2iDst
    assert method_for(V, SystemConfig.I2IDCT_RDPCM) is ResidualMethod.Rdpcm
    assert method_for(IntraMode.Diag18, SystemConfig.I2IDCT_RDPCM) is ResidualMethod.I2iDct
    assert method_for(IntraMode.Diag2, SystemConfig.RDPCM) is ResidualMethod.Skip
    assert method_for(H, SystemConfig.I2IDCT) is ResidualMethod.I2iDct
    for mode in IntraMode:
        assert method_for(mode, SystemConfig.SKIP) is ResidualMethod.Skip


def test_process_residual():
    r = np.random.default_rng(2).integers(-50, 50, (4, 4))
    method, payload = process_residual(r, IntraMode.Planar, SystemConfig.SKIP)
    assert method is ResidualMethod.Skip and np.array_equal(payload, r)
    method, payload = process_residual(r, IntraMode.Planar, SystemConfig.I2IDST)
    assert np.array_equal(payload, transform_2d_fwd(r, TransformKind.I2iDst4))


def test_system_names():
    assert [c.cli_name for c in SystemConfig] == [
        "skip", "rdpcm", "i2idct", "i2idct-rdpcm", "i2idst", "i2idst-rdpcm"
    ]
    assert SystemConfig.from_name("i2idst-rdpcm") is SystemConfig.I2IDST_RDPCM


def test_scans():
    assert ZIGZAG[:6] == ((0, 0), (0, 1), (1, 0), (2, 0), (1, 1), (0, 2))
    assert sorted(ZIGZAG) == sorted(RASTER)
    b = np.zeros((4, 4), dtype=np.int64)
    b[2, 3] = 5
    assert scan_coefficients(b, ResidualMethod.Skip).tolist().index(5) == 11
    blocks = np.random.default_rng(3).integers(-9, 9, (50, 4, 4))
    for m in ResidualMethod:
        assert np.array_equal(unscan_coefficients(scan_coefficients(blocks, m), m), blocks)
