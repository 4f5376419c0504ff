"""Lossless 4x4 intra coding with integer-to-integer DCT and DST."""

from __future__ import annotations

__version__ = "0.1.0"

from .codec import decode_bytes, decode_plane, encode_bytes, encode_plane
from .container import CodedStream
from .prediction import IntraMode
from .residual import ResidualMethod, SystemConfig
from .transforms import TransformKind, transform_2d_fwd, transform_2d_inv

__all__ = [
    "CodedStream",
    "IntraMode",
    "ResidualMethod",
    "SystemConfig",
    "TransformKind",
    "decode_bytes",
    "decode_plane",
    "encode_bytes",
    "encode_plane",
    "transform_2d_fwd",
    "transform_2d_inv",
]
