"""Rank-2 frames of positive definite 2x2 matrices and the rotated vectors v(t).

A frame ``(a, b)`` writes ``N = a a^T + b b^T``. Rotating by ``t`` gives

    a_k(t) = a_k cos t + b_k sin t,   b_k(t) = b_k cos t - a_k sin t,

which keeps ``N`` fixed, and ``v(t) = (r_0(t), ..., r_d(t))`` with
``r_j(t) = sum_k mu_k a_k(t)^(d-j) b_k(t)^j``. Since ``r_0' = d r_1``,
critical points of ``r_0`` are the sign changes of ``r_1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .config import CAPS, TOL

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class SpinModel2:
    """Two-spin model: symmetric ``N`` with positive entries and det > 0, activities ``mu > 0``."""

    n11: float
    n12: float
    n22: float
    mu1: float = 1.0
    mu2: float = 1.0

    def __post_init__(self):
        if min(self.n11, self.n12, self.n22) <= 0:
            raise ValueError("N must have strictly positive entries")
        if self.det <= 0:
            raise ValueError(f"N is not positive definite (det = {self.det:g})")
        if min(self.mu1, self.mu2) <= 0:
            raise ValueError("activities must be positive")

    @classmethod
    def from_arrays(cls, N, mu) -> "SpinModel2":
        N = np.asarray(N, dtype=float)
        if N.shape != (2, 2) or N[0, 1] != N[1, 0]:
            raise ValueError("N must be a symmetric 2x2 matrix")
        return cls(float(N[0, 0]), float(N[0, 1]), float(N[1, 1]), float(mu[0]), float(mu[1]))

    @classmethod
    def random_cluster(cls, q: float, w: float) -> "SpinModel2":
        """``(M'_2, nu_2)``: N = [[1+w, 1], [1, 1+w/(q-1)]], mu = (1, q-1)."""
        if q <= 1:
            raise ValueError("the random cluster surrogate needs q > 1")
        return cls(1 + w, 1.0, 1 + w / (q - 1), 1.0, q - 1)

    @property
    def det(self) -> float:
        return self.n11 * self.n22 - self.n12 ** 2

    @property
    def N(self) -> np.ndarray:
        return np.array([[self.n11, self.n12], [self.n12, self.n22]])

    @property
    def mu(self) -> tuple[float, float]:
        return (self.mu1, self.mu2)

    def T(self, d: int) -> float:
        return (self.mu2 / self.mu1) ** (2 / d)


@dataclass(frozen=True)
class Rank2Frame:
    a1: float
    a2: float
    b1: float
    b2: float

    def matrix(self) -> np.ndarray:
        a = np.array([self.a1, self.a2])
        b = np.array([self.b1, self.b2])
        return np.outer(a, a) + np.outer(b, b)

    def residual(self, m: SpinModel2) -> float:
        return float(np.max(np.abs(self.matrix() - m.N)))

    def at(self, t):
        """``(a1(t), a2(t), b1(t), b2(t))``; vectorised over ``t``."""
        c, s = np.cos(t), np.sin(t)
        return (self.a1 * c + self.b1 * s, self.a2 * c + self.b2 * s,
                self.b1 * c - self.a1 * s, self.b2 * c - self.a2 * s)


def rotate(f: Rank2Frame, t: float) -> Rank2Frame:
    return Rank2Frame(*(float(x) for x in f.at(t)))


def decompose_signed(m: SpinModel2) -> Rank2Frame:
    """Frame from the eigen-decomposition with ``a1, a2, b1 > 0 > b2``."""
    lam, vec = np.linalg.eigh(m.N)
    if lam[0] <= 0:
        raise ValueError("N is not positive definite")
    top = vec[:, 1] * np.sign(vec[0, 1])      # Perron vector, both entries positive
    low = vec[:, 0] * np.sign(vec[0, 0])      # orthogonal: first entry > 0, second < 0
    a = math.sqrt(lam[1]) * top
    b = math.sqrt(lam[0]) * low
    return Rank2Frame(float(a[0]), float(a[1]), float(b[0]), float(b[1]))


def decompose_positive(m: SpinModel2) -> Rank2Frame:
    """Frame with all four entries positive, rotated from the signed frame.

    The rotation angle sits midway in the open interval of tangents
    ``(-a1/b1, b2/a2)`` that makes every entry positive.
    """
    f = decompose_signed(m)
    lo, hi = math.atan(-f.a1 / f.b1), math.atan(f.b2 / f.a2)
    return rotate(f, 0.5 * (lo + hi))


def canonical_rc_frame(q: float, w: float) -> Rank2Frame:
    """The explicit frame of ``M'_2``: a = sqrt(1+w/q)(1, 1), b = (sqrt((q-1)w/q), -sqrt(w/(q(q-1))))."""
    if q <= 1:
        raise ValueError("canonical frame needs q > 1")
    if w < 0:
        raise ValueError("canonical frame needs w >= 0")
    a = math.sqrt(1 + w / q)
    return Rank2Frame(a, a, math.sqrt((q - 1) * w / q), -math.sqrt(w / (q * (q - 1))))


def r_components(f: Rank2Frame, mu, t, d: int, j: int):
    """``r_j(t)``, vectorised over ``t``."""
    a1, a2, b1, b2 = f.at(t)
    return mu[0] * a1 ** (d - j) * b1 ** j + mu[1] * a2 ** (d - j) * b2 ** j


def r_vector(f: Rank2Frame, mu, t: float, d: int) -> np.ndarray:
    """``v(t) = (r_0(t), ..., r_d(t))``."""
    if d < 1:
        raise ValueError("d must be positive")
    return np.array([float(r_components(f, mu, t, d, j)) for j in range(d + 1)])


def critical_points(f: Rank2Frame, mu, d: int, grid: int = CAPS.t0_grid,
                    lo: float = 0.0, hi: float = TWO_PI) -> list[float]:
    """All sign changes of ``r_1`` on ``[lo, hi]``, polished by bracketing.

    ``r_1`` is a trigonometric polynomial of degree ``d``, so it has at most
    ``2d`` zeros per period and a grid of a few thousand points separates them
    for the degrees in scope.
    """
    ts = np.linspace(lo, hi, grid + 1)
    vals = r_components(f, mu, ts, d, 1)
    scale = float(np.max(np.abs(r_components(f, mu, ts, d, 0)))) or 1.0
    r1 = lambda t: float(r_components(f, mu, t, d, 1))
    roots = []
    for i in range(grid):
        v0, v1 = vals[i], vals[i + 1]
        if abs(v0) <= 1e-15 * scale:
            roots.append(float(ts[i]))
        elif v0 * v1 < 0:
            roots.append(brentq(r1, ts[i], ts[i + 1], xtol=TOL.t_abs * 1e-2, rtol=4 * np.finfo(float).eps))
    if abs(vals[-1]) <= 1e-15 * scale:
        roots.append(float(ts[-1]))
    out: list[float] = []
    for t in sorted(roots):
        if hi - lo >= TWO_PI - 1e-12:
            t = t % TWO_PI
            if TWO_PI - t < 1e-9:
                t = 0.0
        if not any(abs(t - s) < 1e-9 for s in out):
            out.append(t)
    return sorted(out)


def find_t0(f: Rank2Frame, mu, d: int, grid: int = CAPS.t0_grid,
            lo: float = 0.0, hi: float = TWO_PI) -> float:
    """Global maximiser of ``r_0`` on ``[lo, hi]``; ties go to the smallest ``t``."""
    cands = critical_points(f, mu, d, grid, lo, hi)
    if hi - lo < TWO_PI - 1e-12:
        cands = sorted(set(cands) | {lo, hi})
    vals = [float(r_components(f, mu, t, d, 0)) for t in cands]
    best = max(vals)
    for t, v in zip(cands, vals):
        if v >= best - TOL.tie * abs(best):
            return t
    raise AssertionError("unreachable")


def rc_ratio(f: Rank2Frame, t: float) -> float:
    a1, a2, b1, b2 = f.at(t)
    return float(a1 * b1 / (a2 * b2))


def find_t1(f: Rank2Frame, mu, d: int) -> float:
    """Unique ``t`` with ``a1(t)b1(t) / (a2(t)b2(t)) = (mu2/mu1)^(2/d)``.

    Needs a signed frame (``a1, a2, b1 > 0 > b2`` with ``a1a2 + b1b2 > 0``);
    the ratio rises strictly from 0 to infinity on
    ``(arctan(b1/a1), arctan(a2/(-b2)))``, so bisection is exact.
    """
    if not (f.a1 > 0 and f.a2 > 0 and f.b1 > 0 and f.b2 < 0):
        raise ValueError("find_t1 needs a signed frame: a1, a2, b1 > 0 > b2")
    if f.a1 * f.a2 + f.b1 * f.b2 <= 0:
        raise ValueError("find_t1 needs N12 > 0")
    target = (mu[1] / mu[0]) ** (2 / d)
    lo, hi = math.atan(f.b1 / f.a1), math.atan(f.a2 / -f.b2)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo < 1e-16:
            break
        if rc_ratio(f, mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class CircleRadius:
    r_c: float
    quartic_residual: float
    t1: float
    frame: Rank2Frame


def quartic(m: SpinModel2, d: int, R: float) -> tuple[float, float]:
    """Value of the radius quartic at ``R`` and the sum of absolute term sizes."""
    T = m.T(d)
    mid = -m.n22 ** 2 * T + 2 * m.n12 ** 2 - m.n11 ** 2 / T
    terms = (m.det * R ** 4, mid * R ** 2, m.det)
    return sum(terms), sum(abs(x) for x in terms)


def circle_radius(m: SpinModel2, d: int, frame: Rank2Frame | None = None) -> CircleRadius:
    """Radius of the centred Lee-Yang circle and the relative quartic residual."""
    f = frame if frame is not None else decompose_signed(m)
    t1 = find_t1(f, m.mu, d)
    a1, a2, b1, b2 = f.at(t1)
    r_c = math.sqrt(abs(a1 * a2 / (b1 * b2)))
    val, size = quartic(m, d, r_c)
    return CircleRadius(r_c, abs(val) / size, t1, f)


def mixed_state_residual(m: SpinModel2, d: int) -> float:
    """``2 det N - (N22^2 T - 2 N12^2 + N11^2 / T)``; zero exactly at a mixed state."""
    T = m.T(d)
    return 2 * m.det - (m.n22 ** 2 * T - 2 * m.n12 ** 2 + m.n11 ** 2 / T)
