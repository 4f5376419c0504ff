"""Reproducible search for the node wiring of the fixed-factor i2i DST.

The four (p, u) factor pairs are fixed; what remains free is which ordered
node pair each lifting fragment acts on and which factor pair it uses.
Every combination is scored by the worst row correlation of its implied
real matrix with the exact 4-point DST, after sign and order matching.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .transforms import DST_FACTORS


def dst_matrix(n: int = 4) -> np.ndarray:
    """Odd sine transform rows ``sin(pi*(2k+1)*(j+1)/(2n+1))``, unnormalized."""
    k = np.arange(n)
    return np.sin(np.pi * (2 * k[:, None] + 1) * (k[None, :] + 1) / (2 * n + 1))


def dct_matrix(n: int = 4) -> np.ndarray:
    k = np.arange(n)
    return np.cos(np.pi * k[:, None] * (2 * k[None, :] + 1) / (2 * n))


def _fragment_matrix(a: int, b: int, p: float, u: float, n: int) -> np.ndarray:
    first = np.eye(n)
    first[a, b] = p
    second = np.eye(n)
    second[b, a] = u
    swap = np.eye(n)[[b if i == a else a if i == b else i for i in range(n)]]
    return swap @ second @ first


@dataclass(frozen=True)
class WiringCandidate:
    wiring: tuple
    output_order: tuple
    min_corr: float
    correlations: tuple


def search_dst_wiring(threshold: float = 0.95, factors=DST_FACTORS) -> list:
    """All wirings whose worst matched row correlation reaches ``threshold``.

    Wirings differing only by exchanging identical factor pairs are merged.
    Results are sorted by decreasing worst correlation, then by wiring.
    """
    n = 4
    factors = [(float(p), float(u)) for p, u in factors]
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    mats = np.array([[_fragment_matrix(a, b, p, u, n) for p, u in factors] for a, b in pairs])
    ref = dst_matrix(n)
    ref /= np.linalg.norm(ref, axis=1, keepdims=True)
    row_perms = np.array(list(itertools.permutations(range(n))))
    combos = np.array(list(itertools.product(range(len(pairs)), repeat=n)))

    found = {}
    for rows in itertools.permutations(range(n)):
        m = np.broadcast_to(np.eye(n), (len(combos), n, n))
        for step in range(n):
            m = mats[combos[:, step], rows[step]] @ m
        corr = np.abs((m / np.linalg.norm(m, axis=2, keepdims=True)) @ ref.T)
        matched = corr[:, row_perms, np.arange(n)]
        worst = matched.min(axis=2)
        best = worst.argmax(axis=1)
        score = worst[np.arange(len(m)), best]
        for i in np.nonzero(score >= threshold)[0]:
            wiring = tuple((*pairs[c], r) for c, r in zip(combos[i], rows))
            key = tuple((a, b, factors[r]) for a, b, r in wiring)
            order = tuple(int(x) for x in row_perms[best[i]])
            cand = WiringCandidate(
                wiring, order, float(score[i]), tuple(float(x) for x in matched[i, best[i]])
            )
            if key not in found or cand.wiring < found[key].wiring:
                found[key] = cand
    return sorted(found.values(), key=lambda c: (-c.min_corr, c.wiring))
