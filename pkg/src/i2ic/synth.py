"""Seed-pinned synthetic test images."""

from __future__ import annotations

import numpy as np
from scipy.signal import lfilter

DEFAULT_SIGMA = 32.0


def ar1_field(height: int, width: int, rho: float, rng: np.random.Generator) -> np.ndarray:
    """Unit-variance separable AR(1) field.

    Filtering white noise with ``y[n] = rho*y[n-1] + sqrt(1-rho**2)*e[n]``
    down the columns and then along the rows gives the separable recursion
    ``x[i,j] = rho*x[i,j-1] + rho*x[i-1,j] - rho**2*x[i-1,j-1] + (1-rho**2)*e``.
    The first sample of each line starts in the stationary distribution.
    """
    if not 0 < rho < 1:
        raise ValueError(f"rho must lie in (0, 1), got {rho}")
    c = np.sqrt(1 - rho * rho)
    x = rng.standard_normal((height, width))
    for axis in (0, 1):
        x = np.moveaxis(x, axis, 0).copy()
        x[0] /= c
        x = np.moveaxis(lfilter([c], [1.0, -rho], x, axis=0), 0, axis)
    return x


def synth_ar1(width: int, height: int, rho: float, seed: int, sigma: float = DEFAULT_SIGMA) -> np.ndarray:
    """8-bit plane ``clip(round(128 + sigma * field))``, deterministic in ``seed``."""
    field = ar1_field(height, width, rho, np.random.default_rng(seed))
    return np.clip(np.rint(128 + sigma * field), 0, 255).astype(np.uint8)


def synth_noise(width: int, height: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).integers(0, 256, (height, width), dtype=np.uint8)


def synth_gradient(width: int, height: int, seed: int) -> np.ndarray:
    """Linear ramp with a random direction and offset, plus mild noise."""
    rng = np.random.default_rng(seed)
    gy, gx = rng.uniform(-4, 4, 2)
    y, x = np.mgrid[0:height, 0:width]
    ramp = rng.uniform(0, 255) + gy * y + gx * x + rng.normal(0, 2, (height, width))
    return np.clip(np.rint(np.mod(ramp, 256)), 0, 255).astype(np.uint8)


def ar1_corpus(n: int = 10, size: int = 64, rhos=(0.95, 0.97, 0.99), seed: int = 2024) -> list:
    """Pinned AR(1) corpus: ``(name, plane)`` pairs cycling through ``rhos``."""
    out = []
    for i in range(n):
        rho = rhos[i % len(rhos)]
        out.append((f"ar1_r{rho:.2f}_s{seed + i}", synth_ar1(size, size, rho, seed + i)))
    return out
