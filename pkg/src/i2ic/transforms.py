"""4-point integer-to-integer DCT and DST and their separable 2D use.

Both transforms are fixed :class:`~i2ic.lifting.LiftingCascade` objects.
No output scaling is applied anywhere, so the coefficients are not
orthonormal; the inverse undoes the exact integer rounding of the forward.

Blocks are ``int64`` arrays whose last two axes are 4x4, so any number of
blocks can be transformed in one call.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import Overflow
from .lifting import (
    Butterfly,
    DyadicRational,
    LiftingCascade,
    Permutation,
    lifting_fragment,
)

MAX_BIT_DEPTH_BOUND = 20
TRANSFORM_INPUT_LIMIT = 1 << 28
# measured: 2D forward of blocks bounded by 1 never exceeds 2**3 (see tests)
MAX_BIT_GROWTH_2D = 6


class TransformKind(enum.IntEnum):
    I2iDct4 = 0
    I2iDst4 = 1


# Odd-half rotation of the 4-point DCT.  The lifting literature quotes
# p = 3/8, u = 2/8 with the second shear subtracted; in the add-only form
# used here the same structure reads p = -3/8, u = +2/8.
DCT_P = DyadicRational(-3, 3)
DCT_U = DyadicRational(2, 3)

DCT4 = LiftingCascade(
    4,
    (
        Butterfly(0, 3),  # v0 = v0 - v3, v3 = floor avg
        Butterfly(1, 2),
        Butterfly(3, 2),  # even half: v3 = X2, v2 = X0 (average of all four)
        *lifting_fragment(1, 0, DCT_P, DCT_U, 4),  # odd half on (d1, d0)
        Permutation((2, 1, 3, 0)),
    ),
)

DST_FACTORS = (
    (DyadicRational(-5, 3), DyadicRational(4, 3)),
    (DyadicRational(-3, 3), DyadicRational(2, 3)),
    (DyadicRational(-7, 3), DyadicRational(3, 3)),
    (DyadicRational(-5, 3), DyadicRational(4, 3)),
)

# (a node, b node, row of DST_FACTORS) per rotation, in application order.
# Of every ordering of node pairs and factor rows, this is the only wiring
# whose rows all correlate >= 0.95 with the exact DST; see
# ``i2ic.wiring.search_dst_wiring``.
DST_WIRING = (
    (1, 2, 0),
    (3, 1, 2),
    (1, 0, 3),
    (0, 2, 1),
)
# lowest frequency first, like the DCT
DST_OUTPUT_ORDER = (3, 2, 1, 0)


def build_dst4(wiring=DST_WIRING, output_order=DST_OUTPUT_ORDER) -> LiftingCascade:
    steps = []
    for a, b, row in wiring:
        p, u = DST_FACTORS[row]
        steps.extend(lifting_fragment(a, b, p, u, 4))
    steps.append(Permutation(tuple(output_order)))
    return LiftingCascade(4, tuple(steps))


DST4 = build_dst4()

CASCADES = {TransformKind.I2iDct4: DCT4, TransformKind.I2iDst4: DST4}


def _check_input(v: np.ndarray) -> None:
    if v.size and int(np.abs(v).max()) >= TRANSFORM_INPUT_LIMIT:
        raise Overflow("transform input exceeds 2**28")


def i2i_dct4_fwd(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    _check_input(v)
    return DCT4.forward(v)


def i2i_dct4_inv(c) -> np.ndarray:
    return DCT4.inverse(c)


def i2i_dst4_fwd(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    _check_input(v)
    return DST4.forward(v)


def i2i_dst4_inv(c) -> np.ndarray:
    return DST4.inverse(c)


def transform_2d_fwd(block, kind: TransformKind) -> np.ndarray:
    """Rows first, then columns."""
    cascade = CASCADES[TransformKind(kind)]
    b = np.asarray(block, dtype=np.int64)
    _check_input(b)
    rows = cascade.forward(b)
    return np.swapaxes(cascade.forward(np.swapaxes(rows, -1, -2)), -1, -2)


def transform_2d_inv(block, kind: TransformKind) -> np.ndarray:
    """Columns first, then rows: the exact reverse of :func:`transform_2d_fwd`."""
    cascade = CASCADES[TransformKind(kind)]
    b = np.asarray(block, dtype=np.int64)
    cols = np.swapaxes(cascade.inverse(np.swapaxes(b, -1, -2)), -1, -2)
    return cascade.inverse(cols)
