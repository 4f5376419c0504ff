"""Residual processing: the six coding systems, RDPCM and coefficient scans."""

from __future__ import annotations

import enum

import numpy as np

from .prediction import IntraMode
from .transforms import TransformKind, transform_2d_fwd, transform_2d_inv


class ResidualMethod(enum.IntEnum):
    Skip = 0
    Rdpcm = 1
    I2iDct = 2
    I2iDst = 3


class SystemConfig(enum.IntEnum):
    SKIP = 0
    RDPCM = 1
    I2IDCT = 2
    I2IDCT_RDPCM = 3
    I2IDST = 4
    I2IDST_RDPCM = 5

    @property
    def cli_name(self) -> str:
        return self.name.lower().replace("_", "-")

    @classmethod
    def from_name(cls, name: str) -> "SystemConfig":
        return cls[name.upper().replace("-", "_")]


HV_MODES = (IntraMode.Horizontal, IntraMode.Vertical)

_TRANSFORM_OF = {
    SystemConfig.I2IDCT: ResidualMethod.I2iDct,
    SystemConfig.I2IDCT_RDPCM: ResidualMethod.I2iDct,
    SystemConfig.I2IDST: ResidualMethod.I2iDst,
    SystemConfig.I2IDST_RDPCM: ResidualMethod.I2iDst,
}


def method_for(mode: IntraMode, cfg: SystemConfig) -> ResidualMethod:
    """The residual method a system applies to blocks predicted with ``mode``."""
    cfg = SystemConfig(cfg)
    hv = IntraMode(mode) in HV_MODES
    if cfg is SystemConfig.SKIP:
        return ResidualMethod.Skip
    if cfg is SystemConfig.RDPCM:
        return ResidualMethod.Rdpcm if hv else ResidualMethod.Skip
    if cfg in (SystemConfig.I2IDCT_RDPCM, SystemConfig.I2IDST_RDPCM) and hv:
        return ResidualMethod.Rdpcm
    return _TRANSFORM_OF[cfg]


def rdpcm_fwd(r, direction: IntraMode) -> np.ndarray:
    """Subtract the left (Horizontal) or upper (Vertical) residual neighbour."""
    r = np.asarray(r, dtype=np.int64)
    axis = _axis(direction)
    return np.diff(r, axis=axis, prepend=0)


def rdpcm_inv(d, direction: IntraMode) -> np.ndarray:
    return np.cumsum(np.asarray(d, dtype=np.int64), axis=_axis(direction))


def _axis(direction: IntraMode) -> int:
    if direction == IntraMode.Horizontal:
        return -1
    if direction == IntraMode.Vertical:
        return -2
    raise ValueError(f"RDPCM runs only along Horizontal or Vertical, not {direction!r}")


_KIND = {ResidualMethod.I2iDct: TransformKind.I2iDct4, ResidualMethod.I2iDst: TransformKind.I2iDst4}


def apply_method(r, method: ResidualMethod, mode: IntraMode) -> np.ndarray:
    method = ResidualMethod(method)
    if method is ResidualMethod.Skip:
        return np.asarray(r, dtype=np.int64)
    if method is ResidualMethod.Rdpcm:
        return rdpcm_fwd(r, mode)
    return transform_2d_fwd(r, _KIND[method])


def invert_method(payload, method: ResidualMethod, mode: IntraMode) -> np.ndarray:
    method = ResidualMethod(method)
    if method is ResidualMethod.Skip:
        return np.asarray(payload, dtype=np.int64)
    if method is ResidualMethod.Rdpcm:
        return rdpcm_inv(payload, mode)
    return transform_2d_inv(payload, _KIND[method])


def process_residual(r, mode: IntraMode, cfg: SystemConfig) -> tuple:
    method = method_for(mode, cfg)
    return method, apply_method(r, method, mode)


RASTER = tuple((y, x) for y in range(4) for x in range(4))


def _zigzag(n: int) -> tuple:
    order = []
    for s in range(2 * n - 1):
        diag = [(y, s - y) for y in range(n) if 0 <= s - y < n]
        # even anti-diagonals run bottom-left to top-right
        order.extend(reversed(diag) if s % 2 == 0 else diag)
    return tuple(order)


ZIGZAG = _zigzag(4)

_FLAT = {
    "raster": np.array([4 * y + x for y, x in RASTER]),
    "zigzag": np.array([4 * y + x for y, x in ZIGZAG]),
}


def scan_name(method: ResidualMethod) -> str:
    return "zigzag" if method in (ResidualMethod.I2iDct, ResidualMethod.I2iDst) else "raster"


def scan_coefficients(b, method: ResidualMethod) -> np.ndarray:
    b = np.asarray(b, dtype=np.int64)
    flat = b.reshape(b.shape[:-2] + (16,))
    return flat[..., _FLAT[scan_name(method)]]


def unscan_coefficients(vals, method: ResidualMethod) -> np.ndarray:
    vals = np.asarray(vals, dtype=np.int64)
    flat = np.empty_like(vals)
    flat[..., _FLAT[scan_name(method)]] = vals
    return flat.reshape(vals.shape[:-1] + (4, 4))
