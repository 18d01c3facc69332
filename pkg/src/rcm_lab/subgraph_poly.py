"""Subgraph counting polynomial of a regular graph and the key polynomial.

Everything is driven by one exact census: for each edge subset A the
multiset of vertex A-degrees, stored as a count vector ``(c_0, ..., c_d)``
with ``c_j`` the number of vertices of A-degree j. Evaluations at a vector
``x`` are then ``sum_profile count * prod_j x_j^c_j``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import CAPS, CapExceeded
from .graphs import Graph

Profile = tuple[int, ...]


@dataclass(frozen=True)
class EvenPoly:
    """Polynomial in z with only even powers; ``coeffs[k]`` multiplies ``z^(2k)``."""

    coeffs: tuple[float, ...]

    @property
    def degree(self) -> int:
        return 2 * (len(self.coeffs) - 1)

    def dense(self) -> np.ndarray:
        """Coefficients of z^0, z^1, ..., z^degree (odd slots zero)."""
        out = np.zeros(self.degree + 1)
        out[::2] = self.coeffs
        return out

    def __call__(self, z):
        return sum(c * z ** (2 * k) for k, c in enumerate(self.coeffs))


@lru_cache(maxsize=64)
def degree_profiles(g: Graph, cap: int = CAPS.edges) -> dict[Profile, int]:
    """Exact ``{profile: #A}`` over all edge subsets of a simple regular graph."""
    d = g.require_regular()
    if g.m > cap:
        raise CapExceeded(f"{g.m} edges exceeds the enumeration cap of {cap}")
    inc = np.zeros((g.m, g.n), dtype=np.int64)
    for i, (u, v) in enumerate(g.edges):
        inc[i, u] += 1
        inc[i, v] += 1
    base = g.n + 1
    weights = base ** np.arange(d + 1, dtype=np.int64)
    shifts = np.arange(g.m, dtype=np.int64)
    counts: Counter = Counter()
    chunk = 1 << min(g.m, 16)
    for start in range(0, 1 << g.m, chunk):
        masks = np.arange(start, min(start + chunk, 1 << g.m), dtype=np.int64)
        bits = (masks[:, None] >> shifts[None, :]) & 1
        deg = bits @ inc
        key = weights[deg].sum(axis=1)
        uniq, cnt = np.unique(key, return_counts=True)
        for k, c in zip(uniq.tolist(), cnt.tolist()):
            counts[k] += c
    out = {}
    for k, c in counts.items():
        prof = []
        for _ in range(d + 1):
            k, r = divmod(k, base)
            prof.append(r)
        out[tuple(prof)] = c
    return out


def f_monomials(g: Graph, d: int | None = None) -> dict[Profile, int]:
    """Monomial expansion of F_G: exponent vector of (x_0..x_d) -> integer coefficient."""
    g.require_regular(d)
    return dict(degree_profiles(g))


def _check_vector(g: Graph, x) -> tuple[int, np.ndarray]:
    x = np.asarray(x, dtype=float)
    d = g.require_regular(len(x) - 1)
    return d, x


def _term(prof: Profile, x: np.ndarray) -> float:
    return math.prod(float(x[j]) ** c for j, c in enumerate(prof) if c)


def f_eval(g: Graph, x) -> float:
    """``F_G(x_0..x_d) = sum_A prod_v x_{d_A(v)}``."""
    _, x = _check_vector(g, x)
    return math.fsum(c * _term(p, x) for p, c in degree_profiles(g).items())


def f_z_coeffs(g: Graph, x) -> EvenPoly:
    """Coefficients of ``F_G(x | z)``; the z^(2k) slot collects subsets with |A| = k."""
    _, x = _check_vector(g, x)
    buckets: list[list[float]] = [[] for _ in range(g.m + 1)]
    for prof, c in degree_profiles(g).items():
        size = sum(j * cj for j, cj in enumerate(prof)) // 2
        buckets[size].append(c * _term(prof, x))
    return EvenPoly(tuple(math.fsum(b) for b in buckets))


def key_poly(x) -> np.ndarray:
    """Coefficients (ascending in z) of ``K(x|z) = sum_k C(d,k) x_k z^k``."""
    x = np.asarray(x, dtype=float)
    d = len(x) - 1
    return np.array([math.comb(d, k) * x[k] for k in range(d + 1)])


def format_profile(prof: Profile) -> str:
    return " ".join(f"x{j}^{c}" if c > 1 else f"x{j}" for j, c in enumerate(prof) if c)
