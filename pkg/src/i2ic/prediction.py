"""4x4 intra prediction from the row above and the column to the left.

Reference layout per block (``T`` = top, ``L`` = left, ``C`` = corner)::

    C  T0 T1 T2 T3 T4 T5 T6 T7
    L0 .  .  .  .
    L1 .  .  .  .
    L2 .  .  .  .
    L3 .  .  .  .
    L4..L7 (below-left)

Missing top or left references are filled with ``2**(bit_depth-1)``;
top-right samples beyond the right edge repeat ``T3``, and the below-left
samples (never decoded yet in raster order) repeat ``L3``.
"""

from __future__ import annotations

import enum

import numpy as np


class IntraMode(enum.IntEnum):
    DC = 0
    Planar = 1
    Horizontal = 2
    Vertical = 3
    Diag2 = 4
    Diag18 = 5
    Diag34 = 6


MODE_BITS = 3
N_MODES = len(IntraMode)

# Position of each reference in a flat 17-entry array:
# [L7 .. L0, C, T0 .. T7]
_CORNER = 8
_yy, _xx = np.mgrid[0:4, 0:4]
_GATHER = {
    IntraMode.Horizontal: 7 - _yy,
    IntraMode.Vertical: 9 + _xx,
    IntraMode.Diag2: 6 - _xx - _yy,
    IntraMode.Diag18: _CORNER + _xx - _yy,
    IntraMode.Diag34: 10 + _xx + _yy,
}


def gather_references(plane: np.ndarray, ys, xs, bit_depth: int = 8) -> np.ndarray:
    """Reference arrays, shape (nblocks, 17), for blocks with origins ``(ys, xs)``.

    ``plane`` must hold every sample above and to the left of each block;
    its width is the padded coding width.
    """
    plane = np.asarray(plane, dtype=np.int64)
    ys = np.atleast_1d(np.asarray(ys, dtype=np.int64))
    xs = np.atleast_1d(np.asarray(xs, dtype=np.int64))
    width = plane.shape[1]
    fill = 1 << (bit_depth - 1)
    nb = len(ys)
    ref = np.full((nb, 17), fill, dtype=np.int64)

    has_top = ys > 0
    has_left = xs > 0
    if has_top.any():
        yt, xt = ys[has_top] - 1, xs[has_top]
        cols = xt[:, None] + np.arange(8)[None, :]
        # top-right past the edge repeats T3
        cols = np.where(cols < width, cols, xt[:, None] + 3)
        ref[has_top, 9:] = plane[yt[:, None], cols]
    if has_left.any():
        yl, xl = ys[has_left], xs[has_left] - 1
        rows = yl[:, None] + np.minimum(np.arange(8), 3)[None, :]
        ref[has_left, 7::-1] = plane[rows, xl[:, None]]
    corner = has_top & has_left
    if corner.any():
        ref[corner, _CORNER] = plane[ys[corner] - 1, xs[corner] - 1]
    return ref


def _dc(ref: np.ndarray, has_top: np.ndarray, has_left: np.ndarray, fill: int) -> np.ndarray:
    top_sum = ref[:, 9:13].sum(axis=1)
    left_sum = ref[:, 4:8].sum(axis=1)
    total = np.where(has_top, top_sum, 0) + np.where(has_left, left_sum, 0)
    count = 4 * (has_top.astype(np.int64) + has_left.astype(np.int64))
    return np.where(count > 0, total // np.maximum(count, 1), fill)


def _planar(ref: np.ndarray) -> np.ndarray:
    top = ref[:, 9:13]
    left = ref[:, 7:3:-1]
    top_right = ref[:, 13]
    bottom_left = ref[:, 3]
    x = np.arange(4)[None, None, :]
    y = np.arange(4)[None, :, None]
    return (
        (3 - x) * left[:, :, None]
        + (x + 1) * top_right[:, None, None]
        + (3 - y) * top[:, None, :]
        + (y + 1) * bottom_left[:, None, None]
        + 4
    ) >> 3


def predict_from_references(ref: np.ndarray, ys, xs, bit_depth: int = 8) -> np.ndarray:
    """All seven predictions, shape (nblocks, 7, 4, 4)."""
    ys = np.atleast_1d(np.asarray(ys))
    xs = np.atleast_1d(np.asarray(xs))
    nb = len(ref)
    out = np.empty((nb, N_MODES, 4, 4), dtype=np.int64)
    dc = _dc(ref, ys > 0, xs > 0, 1 << (bit_depth - 1))
    out[:, IntraMode.DC] = dc[:, None, None]
    out[:, IntraMode.Planar] = _planar(ref)
    for mode, idx in _GATHER.items():
        out[:, mode] = ref[:, idx]
    return out


def predict_all(plane: np.ndarray, ys, xs, bit_depth: int = 8) -> np.ndarray:
    ref = gather_references(plane, ys, xs, bit_depth)
    return predict_from_references(ref, ys, xs, bit_depth)


def predict_block(recon: np.ndarray, pos: tuple, mode: IntraMode, bit_depth: int = 8) -> np.ndarray:
    """4x4 prediction for the block whose top-left sample is ``pos = (y, x)``."""
    y, x = pos
    return predict_all(recon, [y], [x], bit_depth)[0, IntraMode(mode)]
