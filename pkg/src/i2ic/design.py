"""Rotation-cascade transform design against an AR(1) intra-residual model.

The residual left after predicting a block from its boundary behaves like
``x(i) = s(i) - s(0)`` for a first-order Markov signal ``s``, whose
autocorrelation is ``1 + rho^|i-j| - rho^i - rho^j`` (1-based indices).
:func:`chen_design` approximates the KLT of that matrix with a short
cascade of plane rotations, which :func:`quantize_cascade` then turns into
integer lifting steps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import SingularTransform
from .lifting import DEGENERACY_EPS, LiftingCascade, PlaneRotation, rotation_i2i, swap

MAX_CONDITION = 1e12


@dataclass(frozen=True)
class Ar1Model:
    rho: float
    n: int = 4

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho={self.rho} must lie in (0, 1)")
        if self.n < 2:
            raise ValueError("signal length must be at least 2")


def ar1_intra_autocorr(model: Ar1Model) -> np.ndarray:
    idx = np.arange(1, model.n + 1, dtype=float)
    rho = model.rho
    return 1.0 + rho ** np.abs(idx[:, None] - idx[None, :]) - rho ** idx[:, None] - rho ** idx[None, :]


def is_psd(R: np.ndarray, tol: float = 1e-12) -> bool:
    """Symmetric and positive semidefinite, tested by a jittered Cholesky."""
    if not np.allclose(R, R.T, atol=tol, rtol=0.0):
        return False
    try:
        np.linalg.cholesky(R + tol * np.eye(len(R)))
    except np.linalg.LinAlgError:
        return False
    return True


def coding_gain_db(R: np.ndarray, T: np.ndarray) -> float:
    """Biorthogonal coding gain of analysis matrix ``T`` for autocorrelation ``R``.

    Each coefficient variance is weighted by the squared norm of its
    synthesis basis vector (column of ``T^-1``), which makes the figure
    invariant to row scaling of ``T``.
    """
    R = np.asarray(R, dtype=float)
    T = np.asarray(T, dtype=float)
    if np.linalg.cond(T) >= MAX_CONDITION:
        raise SingularTransform("transform is singular or badly conditioned")
    variances = np.einsum("ij,jk,ik->i", T, R, T)
    synth = np.linalg.inv(T)
    weights = np.sum(synth**2, axis=0)
    geo = np.exp(np.mean(np.log(variances * weights)))
    return float(10.0 * np.log10(np.mean(np.diag(R)) / geo))


def klt_gain_db(R: np.ndarray) -> float:
    _, vecs = np.linalg.eigh(R)
    return coding_gain_db(R, vecs.T)


def givens(n: int, i: int, j: int, angle: float) -> np.ndarray:
    g = np.eye(n)
    c, s = math.cos(angle), math.sin(angle)
    g[i, i], g[i, j], g[j, i], g[j, j] = c, s, -s, c
    return g


def wrap_angle(a: float) -> float:
    """Map to (-pi, pi]."""
    a = math.fmod(a, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    elif a > math.pi:
        a -= 2.0 * math.pi
    return a


@dataclass(frozen=True)
class RotationCascade:
    n: int
    rotations: tuple = ()

    def __post_init__(self):
        for rot in self.rotations:
            if rot.j >= self.n:
                raise ValueError(f"rotation on ({rot.i}, {rot.j}) outside size {self.n}")

    @property
    def pairs(self) -> tuple:
        return tuple((r.i, r.j) for r in self.rotations)


def cascade_to_matrix(c: RotationCascade) -> np.ndarray:
    m = np.eye(c.n)
    for rot in c.rotations:
        m = givens(c.n, rot.i, rot.j, rot.angle) @ m
    return m


def jacobi_angle(R: np.ndarray, i: int, j: int) -> float:
    return 0.5 * math.atan2(2.0 * R[i, j], R[i, i] - R[j, j])


def best_rotation_for_pair(R: np.ndarray, i: int, j: int) -> tuple:
    """Angle annihilating ``R[i, j]`` and the coding gain once it is applied."""
    if not i < j:
        raise ValueError("pair must satisfy i < j")
    angle = jacobi_angle(R, i, j)
    return angle, coding_gain_db(R, givens(len(R), i, j, angle))


@dataclass
class DesignIteration:
    pair: tuple
    angle: float
    gain_db: float


@dataclass
class DesignReport:
    rho: float | None
    n: int
    budget: int
    method: str
    iterations: list = field(default_factory=list)
    identity_gain_db: float = 0.0
    final_gain_db: float = 0.0
    klt_gain_db: float = 0.0
    transform: np.ndarray | None = None

    @property
    def gains(self) -> list:
        return [it.gain_db for it in self.iterations]

    @property
    def klt_fraction(self) -> float:
        return self.final_gain_db / self.klt_gain_db if self.klt_gain_db else float("nan")

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "size": self.n,
            "rotations": self.budget,
            "method": self.method,
            "identity_gain_db": self.identity_gain_db,
            "final_gain_db": self.final_gain_db,
            "klt_gain_db": self.klt_gain_db,
            "klt_fraction": self.klt_fraction,
            "iterations": [
                {"pair": list(it.pair), "angle": it.angle, "gain_db": it.gain_db}
                for it in self.iterations
            ],
            "transform": None if self.transform is None else self.transform.tolist(),
        }


def greedy_design(R: np.ndarray, budget: int) -> RotationCascade:
    """Plain greedy: each step adds the Jacobi rotation with the best gain."""
    n = len(R)
    cur = np.array(R, dtype=float)
    rotations = []
    for _ in range(budget):
        best = None
        for i, j in itertools.combinations(range(n), 2):
            angle, gain = best_rotation_for_pair(cur, i, j)
            # strict improvement keeps the lexicographically first pair on ties
            if best is None or gain > best[0] + 1e-12:
                best = (gain, i, j, angle)
        _, i, j, angle = best
        g = givens(n, i, j, angle)
        cur = g @ cur @ g.T
        rotations.append(PlaneRotation(wrap_angle(angle), i, j))
    return RotationCascade(n, tuple(rotations))


def canonical_topologies(n: int, budget: int) -> list:
    """Pair sequences with redundant orderings removed.

    Two consecutive rotations on the same pair merge into one, and two
    consecutive rotations on disjoint pairs commute, so only the ordering
    with the smaller pair first is kept.
    """
    pairs = list(itertools.combinations(range(n), 2))
    out = []

    def extend(seq):
        if len(seq) == budget:
            out.append(tuple(seq))
            return
        for p in range(len(pairs)):
            if seq:
                q = seq[-1]
                if p == q:
                    continue
                if not set(pairs[p]) & set(pairs[q]) and p < q:
                    continue
            seq.append(p)
            extend(seq)
            seq.pop()

    extend([])
    return [tuple(pairs[p] for p in seq) for seq in out]


def _batched_objective(theta, pairs_idx, R, n):
    """Sum over problems of ``sum(log diag(T R T^T))`` and its gradient.

    ``theta`` has shape (K, B); ``pairs_idx`` has shape (B, 2) or (K, B, 2).
    Minimizing it maximizes the coding gain of the orthonormal cascade.
    """
    K, B = theta.shape
    pi = np.broadcast_to(pairs_idx, (K, B, 2))
    c, s = np.cos(theta), np.sin(theta)
    rows = np.arange(K)
    G = np.broadcast_to(np.eye(n), (K, B, n, n)).copy()
    dG = np.zeros((K, B, n, n))
    for b in range(B):
        i, j = pi[:, b, 0], pi[:, b, 1]
        G[rows, b, i, i] = c[:, b]
        G[rows, b, i, j] = s[:, b]
        G[rows, b, j, i] = -s[:, b]
        G[rows, b, j, j] = c[:, b]
        dG[rows, b, i, i] = -s[:, b]
        dG[rows, b, i, j] = c[:, b]
        dG[rows, b, j, i] = -c[:, b]
        dG[rows, b, j, j] = -s[:, b]
    prefix = [np.broadcast_to(np.eye(n), (K, n, n))]
    for b in range(B):
        prefix.append(G[:, b] @ prefix[-1])
    suffix = [np.broadcast_to(np.eye(n), (K, n, n))]
    for b in reversed(range(B)):
        suffix.append(suffix[-1] @ G[:, b])
    suffix = suffix[::-1]
    T = prefix[-1]
    RT = R @ np.swapaxes(T, 1, 2)
    var = np.einsum("kij,kji->ki", T, RT)
    f = np.log(var).sum(axis=1)
    grad = np.empty((K, B))
    for b in range(B):
        dT = suffix[b + 1] @ dG[:, b] @ prefix[b]
        grad[:, b] = 2.0 * np.sum(np.einsum("kij,kji->ki", dT, RT) / var, axis=1)
    return f, grad


def _descend(theta, pidx, R, n, iters: int = 300) -> np.ndarray:
    """Batched gradient descent with a per-problem adaptive step."""
    theta = theta.copy()
    step = np.full(len(theta), 0.1)
    f, g = _batched_objective(theta, pidx, R, n)
    for _ in range(iters):
        trial = theta - step[:, None] * g
        f_new, g_new = _batched_objective(trial, pidx, R, n)
        ok = f_new < f
        theta[ok], f[ok], g[ok] = trial[ok], f_new[ok], g_new[ok]
        step = np.where(ok, step * 1.5, step * 0.5)
    return theta


def _jacobi_rollout(R: np.ndarray, topology: tuple) -> list:
    n = len(R)
    cur = np.array(R, dtype=float)
    angles = []
    for i, j in topology:
        a = jacobi_angle(cur, i, j)
        g = givens(n, i, j, a)
        cur = g @ cur @ g.T
        angles.append(a)
    return angles


def _prefix_gains(R: np.ndarray, cascade: RotationCascade) -> list:
    gains = []
    for k in range(1, len(cascade.rotations) + 1):
        sub = RotationCascade(cascade.n, cascade.rotations[:k])
        gains.append(coding_gain_db(R, cascade_to_matrix(sub)))
    return gains


def _polish(R, topology, theta0):
    n = len(R)
    pidx = np.array(topology)

    def fun(x):
        f, g = _batched_objective(x[None, :], pidx, R, n)
        return f[0], g[0]

    res = minimize(fun, theta0, jac=True, method="BFGS", options={"gtol": 1e-12, "maxiter": 500})
    return res.x if res.fun <= fun(theta0)[0] else np.asarray(theta0)


def search_design(
    R: np.ndarray,
    budget: int,
    *,
    restarts: int = 0,
    seed: int = 0,
    polish_top: int = 24,
    max_topologies: int = 5000,
) -> RotationCascade | None:
    """Best monotone cascade over all canonical topologies of length ``budget``.

    Every topology is optimized jointly over its angles from a Jacobi
    rollout and ``restarts`` random starts; the best candidates are polished
    individually.  Returns None when the topology count exceeds
    ``max_topologies``.
    """
    n = len(R)
    if budget == 0:
        return RotationCascade(n, ())
    topologies = canonical_topologies(n, budget)
    if len(topologies) > max_topologies:
        return None
    rng = np.random.default_rng(seed)
    starts, pidx, owner = [], [], []
    for t, topo in enumerate(topologies):
        starts.append(_jacobi_rollout(R, topo))
        starts.extend(rng.uniform(-math.pi / 2, math.pi / 2, (restarts, budget)))
        pidx.extend([topo] * (restarts + 1))
        owner.extend([t] * (restarts + 1))
    theta0 = np.array(starts, dtype=float)
    pidx = np.array(pidx)
    theta = _descend(theta0, pidx, R, n)
    f, _ = _batched_objective(theta, pidx, R, n)
    order = np.lexsort((np.array(owner), f))
    seen, shortlist = set(), []
    for k in order:
        if owner[k] in seen:
            continue
        seen.add(owner[k])
        shortlist.append(k)
        if len(shortlist) == polish_top:
            break
    candidates = []
    for k in shortlist:
        topo = topologies[owner[k]]
        angles = _polish(R, topo, theta[k])
        cascade = RotationCascade(
            n, tuple(PlaneRotation(wrap_angle(a), i, j) for a, (i, j) in zip(angles, topo))
        )
        gains = _prefix_gains(R, cascade)
        if all(b >= a - 1e-12 for a, b in zip(gains, gains[1:])):
            candidates.append((gains[-1], topo, cascade))
    if not candidates:
        return None
    best = max(g for g, _, _ in candidates)
    tied = [c for c in candidates if c[0] >= best - 1e-8]
    return min(tied, key=lambda c: c[1])[2]


def chen_design(
    R: np.ndarray,
    budget: int,
    *,
    method: str = "search",
    rho: float | None = None,
    **search_kw,
) -> tuple:
    """Design a ``budget``-rotation cascade approximating the KLT of ``R``.

    ``method="greedy"`` is the classic algorithm: each iteration adds the
    Jacobi rotation with the largest coding gain and updates ``R``.
    ``method="search"`` (default) keeps the greedy cascade as a fallback but
    also searches every canonical pair topology with jointly optimized
    angles, keeping only cascades whose gain never drops from one rotation
    to the next.  Ties go to the lexicographically smallest pair sequence.
    """
    if budget < 0:
        raise ValueError("rotation budget must be nonnegative")
    if method not in ("greedy", "search"):
        raise ValueError(f"unknown design method {method!r}")
    R = np.asarray(R, dtype=float)
    n = len(R)
    cascade = greedy_design(R, budget)
    used = "greedy"
    if method == "search":
        found = search_design(R, budget, **search_kw)
        if found is not None:
            g_found = coding_gain_db(R, cascade_to_matrix(found))
            if g_found >= coding_gain_db(R, cascade_to_matrix(cascade)) - 1e-12:
                cascade, used = found, "search"
    gains = _prefix_gains(R, cascade)
    report = DesignReport(
        rho=rho,
        n=n,
        budget=budget,
        method=used,
        iterations=[
            DesignIteration((r.i, r.j), r.angle, g) for r, g in zip(cascade.rotations, gains)
        ],
        identity_gain_db=coding_gain_db(R, np.eye(n)),
        klt_gain_db=klt_gain_db(R),
        transform=cascade_to_matrix(cascade),
    )
    report.final_gain_db = gains[-1] if gains else report.identity_gain_db
    return cascade, report


def quantize_cascade(c: RotationCascade, bits: int = 3) -> LiftingCascade:
    """Replace each rotation by its two lifting steps with ``bits``-bit factors.

    Rotations by multiples of a quarter turn become a swap or nothing,
    since signs are scaling and scaling is dropped.
    """
    steps = ()
    for rot in c.rotations:
        if abs(math.sin(rot.angle)) <= DEGENERACY_EPS:
            continue  # identity up to sign
        if abs(math.cos(rot.angle)) <= DEGENERACY_EPS:
            steps += (swap(rot.i, rot.j, c.n),)  # a swap up to sign
            continue
        steps += rotation_i2i(rot, bits, c.n).steps
    return LiftingCascade(c.n, steps)


def row_correlations(M: np.ndarray, reference: np.ndarray) -> tuple:
    """Match rows of ``M`` to rows of ``reference`` up to sign and order.

    Returns ``(perm, corr)`` where ``perm[k]`` is the row of ``M`` assigned
    to reference row ``k`` and ``corr[k]`` the absolute normalized inner
    product.  The assignment maximizes the worst row, then the sum.
    """
    M = np.asarray(M, dtype=float)
    reference = np.asarray(reference, dtype=float)
    a = M / np.linalg.norm(M, axis=1, keepdims=True)
    b = reference / np.linalg.norm(reference, axis=1, keepdims=True)
    c = np.abs(a @ b.T)
    n = len(c)
    best = None
    for perm in itertools.permutations(range(n)):
        vals = c[list(perm), range(n)]
        key = (vals.min(), vals.sum())
        if best is None or key > best[0]:
            best = (key, perm, vals)
    return best[1], best[2]
