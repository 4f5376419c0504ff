"""Plane rotations, their lifting factorizations, and integer lifting steps.

A rotation by ``alpha`` acting on the column vector ``(a, b)``::

    [ cos  sin ] [a]
    [-sin  cos ] [b]

factors either into three shears ``U(q) L(r) U(q)`` or into two shears,
a diagonal scaling and a swap, ``S diag(K1, K2) L(u) U(p)``.  With the
scaling dropped, the two-shear form maps integers to integers and is the
building block of every transform in this package.

All integer routines accept anything ``numpy.asarray`` understands and
operate along the last axis, so one call can process a whole batch of
vectors.  Results are ``int64`` arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateAngle, Overflow

DEGENERACY_EPS = 1e-9
MAX_SHIFT = 15
INT32_LIMIT = 1 << 31


@dataclass(frozen=True)
class PlaneRotation:
    """Givens rotation by ``angle`` on nodes ``(i, j)`` with ``i < j``."""

    angle: float
    i: int = 0
    j: int = 1

    def __post_init__(self):
        if not -math.pi < self.angle <= math.pi:
            raise ValueError(f"angle {self.angle} outside (-pi, pi]")
        if not 0 <= self.i < self.j:
            raise ValueError(f"node pair ({self.i}, {self.j}) must satisfy 0 <= i < j")

    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        return np.array([[c, s], [-s, c]])


@dataclass(frozen=True)
class ThreeLiftDecomp:
    q: float
    r: float

    def matrix(self) -> np.ndarray:
        upper = np.array([[1.0, self.q], [0.0, 1.0]])
        lower = np.array([[1.0, 0.0], [self.r, 1.0]])
        return upper @ lower @ upper


@dataclass(frozen=True)
class TwoLiftDecomp:
    p: float
    u: float
    k1: float
    k2: float
    permuted: bool = True

    def matrix(self) -> np.ndarray:
        upper = np.array([[1.0, self.p], [0.0, 1.0]])
        lower = np.array([[1.0, 0.0], [self.u, 1.0]])
        scale = np.diag([self.k1, self.k2])
        swap = np.array([[0.0, 1.0], [1.0, 0.0]]) if self.permuted else np.eye(2)
        return swap @ scale @ lower @ upper


def decompose_3lift(rot: PlaneRotation) -> ThreeLiftDecomp:
    s, c = math.sin(rot.angle), math.cos(rot.angle)
    if abs(s) <= DEGENERACY_EPS:
        raise DegenerateAngle(f"sin({rot.angle}) ~ 0: no three-shear factorization")
    return ThreeLiftDecomp(q=(1.0 - c) / s, r=-s)


def decompose_2lift(rot: PlaneRotation) -> TwoLiftDecomp:
    s, c = math.sin(rot.angle), math.cos(rot.angle)
    if abs(s) <= DEGENERACY_EPS or abs(c) <= DEGENERACY_EPS:
        raise DegenerateAngle(f"angle {rot.angle} is a multiple of pi/2")
    return TwoLiftDecomp(p=-c / s, u=s * c, k1=-s, k2=1.0 / s)


@dataclass(frozen=True, order=True)
class DyadicRational:
    """The rational ``k / 2**m``; kept unreduced so ``4/8`` stays ``4/8``."""

    k: int
    m: int

    def __post_init__(self):
        if not 0 <= self.m <= MAX_SHIFT:
            raise ValueError(f"shift {self.m} outside [0, {MAX_SHIFT}]")

    @property
    def value(self) -> float:
        return self.k / (1 << self.m)

    def __float__(self) -> float:
        return self.value

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.k, self.m)

    def __str__(self) -> str:
        return f"{self.k}/{1 << self.m}"


def quantize_dyadic(x: float, m: int) -> DyadicRational:
    """Nearest ``k / 2**m`` to ``x``, ties away from zero."""
    if abs(x) >= 1 << MAX_SHIFT:
        raise ValueError(f"|{x}| too large to quantize")
    scaled = abs(x) * (1 << m)
    k = int(math.floor(scaled + 0.5))
    return DyadicRational(-k if x < 0 else k, m)


def dyadic_round(x, m: int):
    """``floor((x + 2**(m-1)) / 2**m)``; identity for ``m == 0``."""
    if m == 0:
        return x
    return (x + (1 << (m - 1))) >> m


def _as_int_array(v) -> np.ndarray:
    return np.array(v, dtype=np.int64)


def _check_int32(x: np.ndarray, what: str) -> None:
    if x.size and int(np.abs(x).max()) >= INT32_LIMIT:
        raise Overflow(f"{what} exceeds 32-bit signed range")


@dataclass(frozen=True)
class LiftingStep:
    """``v[target] += dyadic_round(k * v[source], m)``."""

    target: int
    source: int
    factor: DyadicRational

    def __post_init__(self):
        if self.target == self.source:
            raise ValueError("lifting step target and source must differ")

    def _delta(self, v: np.ndarray) -> np.ndarray:
        prod = self.factor.k * v[..., self.source]
        _check_int32(prod, "lifting product")
        return dyadic_round(prod, self.factor.m)

    def fwd(self, v: np.ndarray) -> None:
        v[..., self.target] += self._delta(v)
        _check_int32(v[..., self.target], "lifting output")

    def inv(self, v: np.ndarray) -> None:
        v[..., self.target] -= self._delta(v)
        _check_int32(v[..., self.target], "lifting output")

    def linear(self, n: int) -> np.ndarray:
        m = np.eye(n)
        m[self.target, self.source] = self.factor.value
        return m


BUTTERFLY_LIMIT = 1 << 29


@dataclass(frozen=True)
class Butterfly:
    """S-transform: ``v[i], v[j] = a - b, b + floor((a - b) / 2)``."""

    i: int
    j: int

    def fwd(self, v: np.ndarray) -> None:
        a, b = v[..., self.i], v[..., self.j]
        _check_butterfly(a, b)
        d = a - b
        v[..., self.j] = b + (d >> 1)
        v[..., self.i] = d

    def inv(self, v: np.ndarray) -> None:
        d, s = v[..., self.i], v[..., self.j]
        b = s - (d >> 1)
        v[..., self.i] = d + b
        v[..., self.j] = b

    def linear(self, n: int) -> np.ndarray:
        m = np.eye(n)
        m[self.i, self.i], m[self.i, self.j] = 1.0, -1.0
        m[self.j, self.i], m[self.j, self.j] = 0.5, 0.5
        return m


def _check_butterfly(a, b) -> None:
    if a.size and max(int(np.abs(a).max()), int(np.abs(b).max())) >= BUTTERFLY_LIMIT:
        raise Overflow("butterfly input exceeds 2**29")


@dataclass(frozen=True)
class Permutation:
    """Reorder nodes: ``out[k] = v[order[k]]``."""

    order: tuple

    def fwd(self, v: np.ndarray) -> None:
        v[...] = v[..., list(self.order)]

    def inv(self, v: np.ndarray) -> None:
        v[..., list(self.order)] = v.copy()

    def linear(self, n: int) -> np.ndarray:
        return np.eye(n)[list(self.order)]


def swap(i: int, j: int, n: int) -> Permutation:
    order = list(range(n))
    order[i], order[j] = j, i
    return Permutation(tuple(order))


Step = Union[LiftingStep, Butterfly, Permutation]


def apply_step_fwd(v, s: Step) -> np.ndarray:
    out = _as_int_array(v)
    s.fwd(out)
    return out


def apply_step_inv(v, s: Step) -> np.ndarray:
    out = _as_int_array(v)
    s.inv(out)
    return out


def butterfly_i2i_fwd(a: int, b: int) -> tuple:
    if max(abs(a), abs(b)) >= BUTTERFLY_LIMIT:
        raise Overflow("butterfly input exceeds 2**29")
    d = a - b
    return d, b + (d >> 1)


def butterfly_i2i_inv(d: int, s: int) -> tuple:
    b = s - (d >> 1)
    return d + b, b


@dataclass(frozen=True)
class LiftingCascade:
    """Ordered integer-to-integer steps acting on length-``size`` vectors."""

    size: int
    steps: tuple

    def forward(self, v) -> np.ndarray:
        out = _as_int_array(v)
        if out.shape[-1] != self.size:
            raise ValueError(f"expected last axis of length {self.size}, got {out.shape}")
        for step in self.steps:
            step.fwd(out)
        return out

    def inverse(self, c) -> np.ndarray:
        out = _as_int_array(c)
        if out.shape[-1] != self.size:
            raise ValueError(f"expected last axis of length {self.size}, got {out.shape}")
        for step in reversed(self.steps):
            step.inv(out)
        return out

    def matrix(self) -> np.ndarray:
        """Real-valued matrix the cascade realizes when rounding is ignored."""
        m = np.eye(self.size)
        for step in self.steps:
            m = step.linear(self.size) @ m
        return m

    def lifting_factors(self) -> list:
        return [s.factor for s in self.steps if isinstance(s, LiftingStep)]

    def __add__(self, other: "LiftingCascade") -> "LiftingCascade":
        if other.size != self.size:
            raise ValueError("cascade sizes differ")
        return LiftingCascade(self.size, self.steps + other.steps)


def lifting_fragment(i: int, j: int, p: DyadicRational, u: DyadicRational, n: int) -> tuple:
    """Two shears plus the output swap, scaling dropped.

    Node ``i`` plays ``a`` and node ``j`` plays ``b``: ``a += p*b``,
    ``b += u*a``, then the nodes trade places.
    """
    return (LiftingStep(i, j, p), LiftingStep(j, i, u), swap(i, j, n))


def rotation_i2i(rot: PlaneRotation, m: int, n: int = 2) -> LiftingCascade:
    decomp = decompose_2lift(rot)
    steps = lifting_fragment(
        rot.i, rot.j, quantize_dyadic(decomp.p, m), quantize_dyadic(decomp.u, m), n
    )
    return LiftingCascade(n, steps)

