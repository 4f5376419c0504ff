"""Lossless block coding of a grayscale plane.

Blocks are 4x4 and visited in raster order.  Each block carries a 3-bit
intra mode followed by 16 Rice-coded values: the residual after the
system's processing, in raster or zigzag order.

Because coding is lossless the reconstruction equals the input, so the
encoder predicts every block from the original plane at once and picks
each block's mode from exact bit counts.  The decoder has to run block by
block, predicting from what it has already reconstructed.
"""

from __future__ import annotations

import numpy as np

from .bitio import BitReader, pack_codewords
from .container import CodedStream
from .errors import (
    DimensionError,
    I2ICError,
    MalformedEscape,
    MalformedStream,
    Overflow,
    TruncatedStream,
)
from .prediction import MODE_BITS, N_MODES, IntraMode, predict_all, predict_block
from .residual import (
    ResidualMethod,
    SystemConfig,
    apply_method,
    invert_method,
    method_for,
    scan_coefficients,
    unscan_coefficients,
)
from .rice import rice_codewords, rice_decode

BLOCK = 4


def pad_plane(img: np.ndarray) -> np.ndarray:
    """Replicate the right column and bottom row up to multiples of 4."""
    h, w = img.shape
    return np.pad(img, ((0, -h % BLOCK), (0, -w % BLOCK)), mode="edge")


def block_origins(height: int, width: int) -> tuple:
    ys, xs = np.mgrid[0:height:BLOCK, 0:width:BLOCK]
    return ys.ravel(), xs.ravel()


def _to_blocks(plane: np.ndarray) -> np.ndarray:
    h, w = plane.shape
    return plane.reshape(h // 4, 4, w // 4, 4).swapaxes(1, 2).reshape(-1, 4, 4)


def _check_image(img, bit_depth: int) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 2 or img.shape[0] == 0 or img.shape[1] == 0:
        raise DimensionError(f"expected a non-empty 2D plane, got shape {img.shape}")
    if not 1 <= bit_depth <= 16:
        raise ValueError(f"bit depth {bit_depth} out of range")
    img = img.astype(np.int64)
    if img.min() < 0 or img.max() >= 1 << bit_depth:
        raise ValueError(f"samples outside [0, 2**{bit_depth})")
    return img


def mode_payloads(blocks: np.ndarray, preds: np.ndarray, cfg: SystemConfig) -> np.ndarray:
    """Scanned payloads for every block under every mode, shape (nb, 7, 16)."""
    resid = blocks[:, None] - preds
    out = np.empty(resid.shape[:2] + (16,), dtype=np.int64)
    for mode in IntraMode:
        method = method_for(mode, cfg)
        payload = apply_method(resid[:, mode], method, mode)
        out[:, mode] = scan_coefficients(payload, method)
    return out


def choose_modes(blocks: np.ndarray, preds: np.ndarray, cfg: SystemConfig) -> tuple:
    """Cheapest mode per block (lowest index on ties), its bit count and payload."""
    payloads = mode_payloads(blocks, preds, cfg)
    codes, lengths = rice_codewords(payloads)
    bits = MODE_BITS + lengths.sum(axis=-1)
    modes = np.argmin(bits, axis=1)
    idx = np.arange(len(modes))
    return modes, bits[idx, modes], codes[idx, modes], lengths[idx, modes]


def choose_mode(orig, ctx: np.ndarray, pos: tuple, cfg: SystemConfig, bit_depth: int = 8) -> tuple:
    """Mode and exact coded size for the block at ``pos = (y, x)`` of the plane ``ctx``.

    ``ctx`` supplies the reference samples; ``orig`` is the block to code.
    """
    y, x = pos
    preds = predict_all(ctx, [y], [x], bit_depth)
    modes, bits, _, _ = choose_modes(np.asarray(orig, dtype=np.int64)[None], preds, SystemConfig(cfg))
    return IntraMode(int(modes[0])), int(bits[0])


def encode_plane(img, cfg: SystemConfig, bit_depth: int = 8) -> CodedStream:
    cfg = SystemConfig(cfg)
    img = _check_image(img, bit_depth)
    height, width = img.shape
    plane = pad_plane(img)
    ys, xs = block_origins(*plane.shape)
    preds = predict_all(plane, ys, xs, bit_depth)
    modes, bits, codes, lengths = choose_modes(_to_blocks(plane), preds, cfg)

    all_codes = np.concatenate([modes[:, None], codes], axis=1)
    all_lengths = np.concatenate([np.full((len(modes), 1), MODE_BITS), lengths], axis=1)
    payload, nbits = pack_codewords(all_codes, all_lengths)
    assert nbits == int(bits.sum())
    return CodedStream(width, height, bit_depth, cfg, payload, nbits)


def decode_plane(stream: CodedStream) -> np.ndarray:
    """Reconstruct the plane; any inconsistency raises :class:`MalformedStream`."""
    try:
        return _decode(stream)
    except MalformedStream:
        raise
    except (TruncatedStream, MalformedEscape, Overflow, I2ICError) as exc:
        raise MalformedStream(f"corrupt payload: {exc}") from exc


def _decode(stream: CodedStream) -> np.ndarray:
    cfg = SystemConfig(stream.config)
    bd = stream.bit_depth
    ph = stream.height + (-stream.height % BLOCK)
    pw = stream.width + (-stream.width % BLOCK)
    recon = np.zeros((ph, pw), dtype=np.int64)
    reader = BitReader(stream.payload, total_bits=stream.payload_bits)
    methods = [method_for(m, cfg) for m in IntraMode]
    limit = 1 << bd

    for y, x in zip(*block_origins(ph, pw)):
        mode_id = reader.read(MODE_BITS)
        if mode_id >= N_MODES:
            raise MalformedStream(f"invalid mode {mode_id} at block ({y}, {x})")
        mode = IntraMode(mode_id)
        method = methods[mode]
        vals = np.array(rice_decode(reader, 16), dtype=np.int64)
        resid = invert_method(unscan_coefficients(vals, method), method, mode)
        block = predict_block(recon, (y, x), mode, bd) + resid
        if block.min() < 0 or block.max() >= limit:
            raise MalformedStream(f"reconstructed samples out of range at block ({y}, {x})")
        recon[y : y + 4, x : x + 4] = block

    if reader.remaining() >= 8 or not reader.rest_is_zero():
        raise MalformedStream("trailing data after the last block")
    return recon[: stream.height, : stream.width]


def encode_bytes(img, cfg: SystemConfig, bit_depth: int = 8) -> bytes:
    return encode_plane(img, cfg, bit_depth).to_bytes()


def decode_bytes(data: bytes) -> np.ndarray:
    return decode_plane(CodedStream.from_bytes(data))


def block_methods(stream: CodedStream) -> list:
    """(mode, method) of each block, read by decoding the stream."""
    cfg = SystemConfig(stream.config)
    out = []
    ph = stream.height + (-stream.height % BLOCK)
    pw = stream.width + (-stream.width % BLOCK)
    reader = BitReader(stream.payload, total_bits=stream.payload_bits)
    for _ in range((ph // 4) * (pw // 4)):
        mode = IntraMode(reader.read(MODE_BITS))
        out.append((mode, method_for(mode, cfg)))
        rice_decode(reader, 16)
    return out


__all__ = [
    "ResidualMethod",
    "block_methods",
    "choose_mode",
    "choose_modes",
    "decode_bytes",
    "decode_plane",
    "encode_bytes",
    "encode_plane",
    "pad_plane",
]
