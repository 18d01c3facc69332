"""The twelve acceptance criteria, at their stated tolerances.

Each test prints one ``criterion N: PASS/FAIL`` line (visible with ``-s``);
the terminal summary repeats the verdicts.
"""
import math
import time

import numpy as np
import pytest

from rcm_lab.bethe import bp_fixed_points, phi, phi_general, t0_rc, w_critical
from rcm_lab.graphs import complete_graph, named_graph, random_regular
from rcm_lab.partition import log_z2, z_spin
from rcm_lab.rank2 import (
    SpinModel2,
    canonical_rc_frame,
    find_t1,
    r_components,
    r_vector,
)
from rcm_lab.roots import even_poly_roots
from rcm_lab.subgraph_poly import f_monomials, f_z_coeffs
from rcm_lab import verify


def verdict(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_phi_851():
    start = time.perf_counter()
    value = phi(5, 1, 8)
    elapsed = time.perf_counter() - start
    err = abs(value - 16.277748757985485)
    verdict(1, err <= 1e-9 and elapsed < 1.0, f"phi={value!r} err={err:.2e} time={elapsed:.3f}s")


def test_criterion_02_t0_values():
    t_a, t_b = t0_rc(5, 1, 8), t0_rc(5, 3, 4)
    err_a = abs(t_a - 0.6619549492373429)
    err_b = abs(t_b - 0.8316331320342567)
    verdict(2, err_a <= 1e-9 and err_b <= 1e-9,
            f"t0(8,5,1)={t_a!r} err={err_a:.2e}; t0(4,5,3)={t_b!r} err={err_b:.2e}")


def test_reference_t0_sits_off_the_critical_point():
    # companion to criterion 2: r_0 is flat at its maximum, so the angle is checked through
    # r_1 = r_0'/d; one Newton step with r_1' = (d-1) r_2 - r_0,
    # from the reference angle lands on the computed t0, which is about 1.7e-9 away
    f, mu, d = canonical_rc_frame(5, 1), (1.0, 4.0), 8
    t0 = t0_rc(5, 1, d)
    r = lambda j, t: float(r_components(f, mu, t, d, j))
    assert abs(r(1, t0)) < 1e-13
    ref = 0.6619549492373429
    assert r(1, ref) > 1e3 * abs(r(1, t0))
    step = ref - r(1, ref) / ((d - 1) * r(2, ref) - r(0, ref))
    assert abs(step - t0) < 1e-13
    assert abs(ref - t0) > 1e-9
    assert r(0, ref) == pytest.approx(16.277748757985485, abs=1e-12)


def test_criterion_03_vectors_851():
    f, mu = canonical_rc_frame(5, 1), (1.0, 4.0)
    v0 = r_vector(f, mu, 0.0, 8)
    ref = np.array([10.368, 0, 1.728, 1.058, 0.936, 0.749, 0.615, 0.501, 0.409])
    worst = float(np.max(np.abs(v0 - ref)))
    lead = r_vector(f, mu, t0_rc(5, 1, 8), 8)[0]
    verdict(3, worst <= 1e-3 and abs(lead - 16.277) <= 1e-3,
            f"max|v(0)-ref|={worst:.2e} v(t0)[0]={lead!r}")


def test_criterion_04_k5_circle_453():
    start = time.perf_counter()
    m = SpinModel2.random_cluster(5, 3)
    f = canonical_rc_frame(5, 3)
    t1 = find_t1(f, m.mu, 4)
    v = r_vector(f, m.mu, t1, 4)
    poly = f_z_coeffs(complete_graph(5), v)
    roots = even_poly_roots(poly)
    elapsed = time.perf_counter() - start
    v_ref = np.array([15.010, -2.835, 0.994, -2.454, 11.249])
    checks = {
        "t1": abs(t1 - 1.06627054934707) <= 1e-9,
        "v": float(np.max(np.abs(v - v_ref))) <= 1e-3,
        "count": len(roots) == 20,
        "radius": float(np.max(np.abs(np.abs(roots) - 1.0747696))) <= 1e-5,
        "z20": abs(poly.coeffs[10] - 180176.234) <= 1e-3,
        "z0": abs(poly.coeffs[0] - 762087.303) <= 1e-3,
        "time": elapsed < 5.0,
    }
    verdict(4, all(checks.values()),
            f"t1={t1!r} z^20={poly.coeffs[10]!r} z^0={poly.coeffs[0]!r} "
            f"time={elapsed:.3f}s failed={[k for k, ok in checks.items() if not ok]}")


def test_criterion_05_critical_k5():
    wc = w_critical(5, 4)
    s = math.sqrt(4.5)
    poly = f_z_coeffs(complete_graph(5), [8, -s, 1, -s, 8])
    ref = [32768, 23040, 11070, 6647.5, 4620, 3927, 4620, 6647.5, 11070, 23040, 32768]
    coeffs = np.array(poly.coeffs)
    coeff_err = float(np.max(np.abs(coeffs - ref)))
    palin = float(np.max(np.abs(coeffs - coeffs[::-1])))
    roots = even_poly_roots(poly)
    dev = float(np.max(np.abs(np.abs(roots) - 1)))
    verdict(5, abs(wc - 2) <= 1e-12 and coeff_err <= 1e-6 and palin <= 1e-6 and dev <= 1e-8,
            f"w_c={wc!r} coeff_err={coeff_err:.2e} palindrome={palin:.2e} radial_dev={dev:.2e}")


def test_criterion_06_k5_monomials():
    mono = f_monomials(complete_graph(5), 4)
    spot = {
        (3, 2, 0, 0, 0): 10,   # x0^3 x1^2
        (1, 4, 0, 0, 0): 15,   # x0 x1^4
        (0, 2, 3, 0, 0): 70,   # x1^2 x2^3
        (0, 0, 5, 0, 0): 12,   # x2^5
        (0, 0, 3, 2, 0): 70,   # x2^3 x3^2
        (0, 0, 0, 0, 5): 1,    # x4^5
    }
    bad = {k: mono.get(k) for k, c in spot.items() if mono.get(k) != c}
    total = sum(mono.values())
    ints = all(isinstance(c, int) for c in mono.values())
    verdict(6, not bad and total == 1024 and ints, f"total={total} mismatches={bad}")


def test_criterion_07_inequality_suite():
    start = time.perf_counter()
    checks = verify.sandwich_suite()
    elapsed = time.perf_counter() - start
    failed = [c for c in checks if not c.passed]
    worst = min(c.value for c in checks)
    verdict(7, not failed and elapsed < 60,
            f"{len(checks)} checks, min slack={worst:.3e}, time={elapsed:.2f}s, failed={[c.case for c in failed][:5]}")


def test_criterion_08_identity_suite():
    checks = verify.identity_suite(n_t=64)
    failed = [c for c in checks if not c.passed]
    worst = max(c.value for c in checks)
    verdict(8, not failed, f"{len(checks)} checks, max residual={worst:.3e}, failed={[c.case for c in failed]}")


def test_criterion_09_bethe_equivalence():
    checks = verify.bethe_suite(n_random=200)
    failed = [c for c in checks if not c.passed]
    worst = max(c.value for c in checks if c.case.startswith("trig=bp"))
    at_wc = len(bp_fixed_points(SpinModel2.random_cluster(5, 2), 4))
    verdict(9, not failed and at_wc == 3,
            f"{len(checks)} checks, max rel gap={worst:.3e}, fixed points at w_c={at_wc}")


def test_criterion_10_lower_bound():
    checks = verify.lower_bound_suite()
    failed = [c for c in checks if not c.passed]
    k4 = complete_graph(4)
    m = SpinModel2.random_cluster(5, 3)
    gap = math.log(z_spin(k4, m.N, m.mu)) - 4 * math.log(phi_general(m, 3))
    verdict(10, not failed and gap > 1e-6,
            f"{len(checks)} corpus checks, min log-gap={min(c.value for c in checks):.3e}, K4 log-gap={gap:.4e}")


def test_criterion_11_free_energy_from_roots():
    checks = verify.roots_suite()
    wanted = [c for c in checks if "k5 q=5" in c.case or "octahedron" in c.case or "refusal" in c.case]
    verdict(11, len(wanted) == 3 and all(c.passed for c in wanted),
            "; ".join(f"{c.case}: {c.value!r}" for c in wanted))


def test_criterion_12_convergence():
    start = time.perf_counter()
    q, w, d = 2.5, 1.0, 3
    lphi = math.log(phi(q, w, d))
    gaps = {}
    for n in (8, 20):
        gaps[n] = float(np.mean([abs(log_z2(random_regular(n, d, s), q, w) / n - lphi) for s in range(5)]))
    elapsed = time.perf_counter() - start
    verdict(12, gaps[20] < gaps[8] and elapsed < 120,
            f"mean gap n=8: {gaps[8]:.4e}, n=20: {gaps[20]:.4e}, time={elapsed:.1f}s")
