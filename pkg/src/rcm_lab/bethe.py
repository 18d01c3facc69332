"""Bethe value Phi: trigonometric maximum, BP fixed points, critical curve and phases.

Two independent routes to ``Phi_d(N, mu)``:

* trigonometric: the maximum over rotations of ``r_0(t) = mu1 a1(t)^d + mu2 a2(t)^d``
  (:func:`phi_general`, and :func:`phi` for the random cluster surrogate);
* belief propagation: the largest Bethe functional over all non-negative
  fixed points of the BP ratio map (:func:`phi_via_bp`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .config import CAPS, TOL
from .rank2 import (
    SpinModel2,
    canonical_rc_frame,
    circle_radius,
    decompose_signed,
    find_t0,
    r_components,
)


def _check_rc(q: float, w: float) -> None:
    if q <= 1:
        raise ValueError(f"need q > 1, got {q}")
    if w < 0:
        raise ValueError(f"need w >= 0, got {w}")


def phi_t(q: float, w: float, d: int, t):
    """``(sqrt(1+w/q) cos t + sqrt((q-1)w/q) sin t)^d + (q-1)(sqrt(1+w/q) cos t - sqrt(w/(q(q-1))) sin t)^d``."""
    _check_rc(q, w)
    a = math.sqrt(1 + w / q)
    c, s = np.cos(t), np.sin(t)
    return ((a * c + math.sqrt((q - 1) * w / q) * s) ** d
            + (q - 1) * (a * c - math.sqrt(w / (q * (q - 1))) * s) ** d)


def rank1_value(q: float, w: float, d: int) -> float:
    return q * (1 + w / q) ** (d / 2)


def t0_rc(q: float, w: float, d: int, star: bool = False) -> float:
    """Maximiser of ``Phi_{d,q,w}(t)`` over [0, 2pi), or over [0, pi/2] when ``star``."""
    _check_rc(q, w)
    f = canonical_rc_frame(q, w)
    mu = (1.0, q - 1)
    if star:
        return find_t0(f, mu, d, lo=0.0, hi=math.pi / 2)
    return find_t0(f, mu, d)


def phi(q: float, w: float, d: int) -> float:
    """``Phi_{d,q,w}``: the global maximum of ``Phi_{d,q,w}(t)``."""
    return float(phi_t(q, w, d, t0_rc(q, w, d)))


def phi_star(q: float, w: float, d: int) -> float:
    """Maximum of ``Phi_{d,q,w}(t)`` restricted to ``[0, pi/2]``."""
    return float(phi_t(q, w, d, t0_rc(q, w, d, star=True)))


def phi_general(m: SpinModel2, d: int) -> float:
    """Trigonometric Bethe value ``max_t mu1 a1(t)^d + mu2 a2(t)^d`` (any frame)."""
    f = decompose_signed(m)
    t0 = find_t0(f, m.mu, d)
    return float(r_components(f, m.mu, t0, d, 0))


# -- belief propagation -------------------------------------------------------
#
# General models use the ratio R = h1/h2 of the BP message, so a fixed point
# solves R = (mu1/mu2) ((N11 R + N12) / (N12 R + N22))^(d-1). The random
# cluster helpers below use h = (R, q-1) / (R + q - 1) instead, where R = 1 is
# always a fixed point.

def _bp_log_gap(rho, m: SpinModel2, d: int):
    return (np.log(rho) - math.log(m.mu1 / m.mu2)
            - (d - 1) * (np.log(m.n11 * rho + m.n12) - np.log(m.n12 * rho + m.n22)))


def bp_fixed_points(m: SpinModel2, d: int, grid: int = CAPS.bp_grid) -> list[float]:
    """All non-negative solutions of the BP ratio equation, ascending.

    The right-hand side maps ``[0, inf)`` into
    ``(mu1/mu2) [(N12/N22)^(d-1), (N11/N12)^(d-1)]``, so every solution lies
    there; the bracket is scanned on a log grid, sign changes are polished by
    Brent's method and grazing (double) roots are picked up from local minima
    of the absolute gap.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    ratio = m.mu1 / m.mu2
    lo = ratio * (m.n12 / m.n22) ** (d - 1)
    hi = ratio * (m.n11 / m.n12) ** (d - 1)
    xs = np.linspace(math.log(lo), math.log(hi), grid + 1)
    gap = lambda x: float(_bp_log_gap(math.exp(x), m, d))
    vals = _bp_log_gap(np.exp(xs), m, d)
    roots = []
    for i in range(grid + 1):
        if vals[i] == 0.0:
            roots.append(xs[i])
        elif i < grid and vals[i] * vals[i + 1] < 0:
            roots.append(brentq(gap, xs[i], xs[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    absval = np.abs(vals)
    for i in range(1, grid):
        if (absval[i] <= absval[i - 1] and absval[i] <= absval[i + 1]
                and vals[i - 1] * vals[i + 1] > 0 and absval[i] < 1e-6):
            res = minimize_scalar(lambda x: abs(gap(x)), bounds=(xs[i - 1], xs[i + 1]),
                                  method="bounded", options={"xatol": 1e-14})
            if abs(gap(res.x)) < 1e-12:
                roots.append(res.x)
    out: list[float] = []
    for x in sorted(roots):
        if not out or abs(x - math.log(out[-1])) > 1e-9:
            out.append(math.exp(x))
    if len(out) > 3:
        raise AssertionError(f"found {len(out)} BP fixed points; at most 3 can exist")
    return out


def bethe_functional(R: float, m: SpinModel2, d: int) -> float:
    """``exp`` of the Bethe functional at the message with ratio ``h1/h2 = R``."""
    norm = math.sqrt(m.n11 * R * R + 2 * m.n12 * R + m.n22)
    return (m.mu1 * ((m.n11 * R + m.n12) / norm) ** d
            + m.mu2 * ((m.n12 * R + m.n22) / norm) ** d)


def phi_via_bp(m: SpinModel2, d: int) -> float:
    """Largest Bethe functional over the BP fixed points."""
    return max(bethe_functional(R, m, d) for R in bp_fixed_points(m, d))


def rc_fixed_points(q: float, w: float, d: int, grid: int = CAPS.bp_grid) -> list[float]:
    """Solutions ``R >= 0`` of ``R = (((1+w)R + q-1) / (R + w + q-1))^(d-1)``."""
    m = SpinModel2.random_cluster(q, w)
    return [(q - 1) * rho for rho in bp_fixed_points(m, d, grid)]


def rc_bethe_functional(R: float, q: float, w: float, d: int) -> float:
    """The random cluster form of the Bethe functional at ratio parameter ``R``."""
    norm = math.sqrt((1 + w) * (R * R + q - 1) + 2 * R * (q - 1) + (q - 1) * (q - 2))
    return (((1 + w) * R + q - 1) / norm) ** d + (q - 1) * ((R + q + w - 1) / norm) ** d


# -- critical curve and phases ------------------------------------------------

def w_critical(q: float, d: int) -> float:
    """``w_c(d, q) = (q-2) / ((q-1)^(1-2/d) - 1) - 1``, with the limit ``2/(d-2)`` at q = 2."""
    if q < 2:
        raise ValueError("w_c is defined for q >= 2")
    if d < 3:
        raise ValueError("w_c needs d >= 3")
    if q == 2:
        return 2 / (d - 2)
    denom = math.expm1((1 - 2 / d) * math.log1p(q - 2))
    return (q - 2) / denom - 1


def h_normalised(q: float, w: float, d: int, t):
    """``(1 + w/q)^(-d/2) Phi_{d,q,w}(t)``."""
    return phi_t(q, w, d, t) / (1 + w / q) ** (d / 2)


@dataclass
class PhaseReport:
    q: float
    w: float
    d: int
    w_c: float | None
    phi: float
    phi_star: float
    phi_rank1: float
    regime: str | None
    t0: float
    t1: float | None
    r_c: float | None
    fixed_points: list[tuple[float, float]] = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        out = asdict(self)
        out["fixed_points"] = [list(p) for p in self.fixed_points]
        return out


def phase_report(q: float, w: float, d: int) -> PhaseReport:
    """Full report for ``q > 1``; the regime is only assigned for ``q >= 2``."""
    _check_rc(q, w)
    if d < 3:
        raise ValueError("d must be >= 3")
    t0 = t0_rc(q, w, d)
    value = float(phi_t(q, w, d, t0))
    star = phi_star(q, w, d)
    rank1 = rank1_value(q, w, d)
    t1 = r_c = None
    fps: list[tuple[float, float]] = []
    if w > 0:
        m = SpinModel2.random_cluster(q, w)
        cr = circle_radius(m, d, frame=canonical_rc_frame(q, w))
        t1, r_c = cr.t1, cr.r_c
        fps = [(R, rc_bethe_functional(R, q, w, d)) for R in rc_fixed_points(q, w, d)]
    w_c = regime = None
    note = ""
    if q >= 2:
        w_c = w_critical(q, d)
        if abs(w - w_c) <= TOL.critical_band:
            regime = "critical"
        else:
            regime = "subcritical" if w < w_c else "supercritical"
    else:
        note = ("1 < q < 2: phi and phi_star are both reported; neither is "
                "asserted to be the limiting free energy here")
    return PhaseReport(q, w, d, w_c, value, star, rank1, regime, t0, t1, r_c, fps, note)


def classify_phase(q: float, w: float, d: int) -> PhaseReport:
    if q < 2:
        raise ValueError("phase classification needs q >= 2")
    rep = phase_report(q, w, d)
    if rep.phi < rep.phi_rank1 * (1 - 1e-10):
        raise AssertionError("Phi fell below the rank-1 value")
    return rep


# -- Tutte plane ----------------------------------------------------------------

@dataclass(frozen=True)
class TutteLimit:
    value: float | None
    region: str


def tutte_limit(x: float, y: float, d: int) -> TutteLimit:
    """Limit of ``T_G(x, y)^(1/v(G))`` on large-girth d-regular graphs where it is covered.

    Region (iii), x >= 1 and 0 <= y <= 1, uses the explicit piecewise formula;
    region (i), (x-1)(y-1) >= 2 with y > 1, is ``Phi_{d,q,w} / (y-1)``; the
    remaining part of x >= d-1 lies under the critical curve and takes the
    rank-1 value ``x (1 + 1/(x-1))^(d/2-1)``.
    """
    if x < 0 or y < 0:
        return TutteLimit(None, "not-covered")
    if x >= 1 and y <= 1:
        if x <= d - 1:
            k = d - 1
            return TutteLimit(k * (k * k / (k * k - x)) ** (d / 2 - 1), "iii")
        return TutteLimit(x * (1 + 1 / (x - 1)) ** (d / 2 - 1), "iii")
    if y > 1 and x > 1 and (x - 1) * (y - 1) >= 2:
        q, w = (x - 1) * (y - 1), y - 1
        return TutteLimit(phi(q, w, d) / w, "i")
    if x >= d - 1 and y >= 0:
        return TutteLimit(x * (1 + 1 / (x - 1)) ** (d / 2 - 1), "ii")
    return TutteLimit(None, "not-covered")
