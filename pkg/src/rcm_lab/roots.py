"""Complex roots of F_G(v|z) and K(v|z), with Lee-Yang circle checks built on them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import TOL
from .graphs import Graph
from .partition import z_spin
from .rank2 import SpinModel2, circle_radius, r_vector
from .subgraph_poly import EvenPoly, f_z_coeffs, key_poly


@dataclass
class RootReport:
    roots: list[complex]
    target_radius: float
    max_radial_deviation: float
    residual_max: float


def _horner(c_desc: np.ndarray, z: np.ndarray):
    """Value and derivative of the polynomial with descending coefficients."""
    p = np.zeros_like(z, dtype=complex)
    dp = np.zeros_like(z, dtype=complex)
    for c in c_desc:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _conjugate_pairs(roots: np.ndarray) -> np.ndarray:
    scale = np.maximum(1.0, np.abs(roots))
    real = np.abs(roots.imag) <= 1e-10 * scale
    upper = np.sort_complex(roots[~real & (roots.imag > 0)])
    lower = np.sort_complex(np.conj(roots[~real & (roots.imag < 0)]))
    if len(upper) != len(lower):
        return roots
    mid = 0.5 * (upper + lower)
    return np.concatenate([roots[real].real.astype(complex), mid, np.conj(mid)])


def residuals(coeffs, roots) -> np.ndarray:
    """``|p(lambda)| / ||p||_1`` for each root; ``coeffs`` ascending.

    Outside the unit disk the reversed polynomial is used at ``1/lambda``,
    i.e. ``|p(lambda)| / (||p||_1 |lambda|^n)``; plain evaluation there is
    swamped by rounding in the large powers.
    """
    c = np.asarray(coeffs, dtype=float)
    z = np.asarray(roots, dtype=complex)
    inside = np.abs(z) <= 1
    out = np.empty(z.shape)
    out[inside] = np.abs(_horner(c[::-1], z[inside])[0])
    out[~inside] = np.abs(_horner(c, 1 / z[~inside])[0])
    return out / np.sum(np.abs(c))


def poly_roots(coeffs, polish: int = 3) -> np.ndarray:
    """All roots of ``sum_k coeffs[k] z^k`` after stripping zero roots and zero leading terms.

    Companion-matrix eigenvalues on the max-normalised coefficients, a few
    guarded Newton steps, then conjugate pairing. Raises ``ArithmeticError``
    if any root misses the residual contract of :func:`residuals` (1e-8).
    """
    c = np.asarray(coeffs, dtype=float)
    nz = np.flatnonzero(c)
    if nz.size == 0:
        raise ValueError("all coefficients are zero")
    c = c[nz[0]:nz[-1] + 1]
    if len(c) == 1:
        return np.zeros(0, dtype=complex)
    c = c / np.max(np.abs(c))
    desc = c[::-1]
    z = np.roots(desc).astype(complex)
    for _ in range(polish):
        p, dp = _horner(desc, z)
        ok = dp != 0
        step = np.where(ok, p / np.where(ok, dp, 1), 0)
        cand = z - step
        better = np.abs(_horner(desc, cand)[0]) < np.abs(p)
        z = np.where(better, cand, z)
    z = _conjugate_pairs(z)
    res = residuals(c, z)
    if res.size and res.max() > TOL.root_residual:
        raise ArithmeticError(f"root residual {res.max():.3g} exceeds {TOL.root_residual:g}")
    return z


def even_poly_roots(p) -> np.ndarray:
    """Roots of a polynomial in even powers of z, solved in ``u = z^2``."""
    if isinstance(p, EvenPoly):
        half = np.asarray(p.coeffs, dtype=float)
    else:
        dense = np.asarray(p, dtype=float)
        if np.any(dense[1::2] != 0):
            raise ValueError("odd-power coefficient is nonzero")
        half = dense[::2]
    u = poly_roots(half)
    s = np.sqrt(u)
    return np.concatenate([s, -s])


def root_moments(roots, k: int) -> tuple[float, float]:
    """Real and imaginary parts of the k-th moment of the uniform measure on the roots."""
    if k < 0:
        raise ValueError("k must be >= 0")
    r = np.asarray(roots, dtype=complex)
    if r.size == 0:
        return (1.0, 0.0) if k == 0 else (0.0, 0.0)
    m = np.mean(r ** k)
    return float(m.real), float(m.imag)


def _report(coeffs, roots, radius: float) -> RootReport:
    dev = float(np.max(np.abs(np.abs(roots) - radius))) if len(roots) else 0.0
    res = float(np.max(residuals(coeffs, roots))) if len(roots) else 0.0
    return RootReport([complex(z) for z in roots], radius, dev, res)


def circle_check(g: Graph, m: SpinModel2, d: int) -> RootReport:
    """Roots of ``F_G(v(t1)|z)`` against the radius from the quartic."""
    g.require_regular(d)
    cr = circle_radius(m, d)
    v = r_vector(cr.frame, m.mu, cr.t1, d)
    poly = f_z_coeffs(g, v)
    return _report(poly.dense(), even_poly_roots(poly), cr.r_c)


def key_circle_check(m: SpinModel2, d: int) -> RootReport:
    """The same check for the key polynomial ``K(v(t1)|z)``."""
    cr = circle_radius(m, d)
    coeffs = key_poly(r_vector(cr.frame, m.mu, cr.t1, d))
    return _report(coeffs, poly_roots(coeffs), cr.r_c)


class FreeEnergy(NamedTuple):
    lhs: float
    rhs: float
    residual: float


def free_energy_from_roots(g: Graph, m: SpinModel2, d: int) -> FreeEnergy:
    """Compare ``ln Z / v(G)`` with ``(ln|lead| + sum ln|1 - lambda_j|) / v(G)``.

    Refused when the circle passes within 1e-6 of ``z = 1``.
    """
    g.require_regular(d)
    cr = circle_radius(m, d)
    if abs(cr.r_c - 1) < 1e-6:
        raise ValueError(f"circle radius {cr.r_c!r} is within 1e-6 of 1; the log sum is singular")
    v = r_vector(cr.frame, m.mu, cr.t1, d)
    poly = f_z_coeffs(g, v)
    roots = even_poly_roots(poly)
    lead = poly.coeffs[-1]
    lhs = math.log(z_spin(g, m.N, m.mu)) / g.n
    rhs = (math.log(abs(lead)) + math.fsum(np.log(np.abs(1 - roots)))) / g.n
    return FreeEnergy(lhs, rhs, abs(lhs - rhs))
