import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rcm_lab.bethe import (
    bethe_functional,
    bp_fixed_points,
    classify_phase,
    h_normalised,
    phase_report,
    phi,
    phi_general,
    phi_star,
    phi_t,
    phi_via_bp,
    rank1_value,
    rc_bethe_functional,
    rc_fixed_points,
    tutte_limit,
    w_critical,
)
from rcm_lab.rank2 import SpinModel2, canonical_rc_frame, r_components


def test_phi_t_values():
    assert phi_t(5, 1, 8, 0.0) == pytest.approx(10.368, rel=1e-14)
    assert phi_t(3, 0, 4, 0.7) == pytest.approx(3 * math.cos(0.7) ** 4, rel=1e-14)
    f = canonical_rc_frame(2.5, 1.3)
    for t in np.linspace(0, 6, 13):
        assert phi_t(2.5, 1.3, 5, t) == pytest.approx(float(r_components(f, (1, 1.5), t, 5, 0)), rel=1e-12)
    for bad in ((1.0, 1.0), (2.0, -0.1)):
        with pytest.raises(ValueError):
            phi_t(*bad, 3, 0.0)


def test_phi_examples():
    assert phi(5, 1, 8) == pytest.approx(16.277748757985485, abs=1e-9)
    assert phi(5, 3, 4) == pytest.approx(16.315621073058985, abs=1e-9)
    assert phi(5, 1, 4) == pytest.approx(7.2, rel=1e-13)


def test_phi_star_agrees_for_q_at_least_two():
    for q, w, d in [(2, 1, 3), (2.5, 0.7, 5), (5, 3, 4), (10, 4, 6)]:
        assert phi_star(q, w, d) == pytest.approx(phi(q, w, d), rel=1e-13)


def test_phi_star_can_differ_below_two():
    assert phi(1.5, 2, 3) > phi_star(1.5, 2, 3) * 1.01


def test_ising_value():
    w, d = 0.1, 3
    m = SpinModel2(1 + w, 1, 1 + w)
    assert phi_general(m, d) == pytest.approx(2 * (1 + w / 2) ** (d / 2), rel=1e-12)


def test_general_matches_rc():
    m = SpinModel2.random_cluster(4, 2.2)
    assert phi_general(m, 5) == pytest.approx(phi(4, 2.2, 5), rel=1e-10)
    m = SpinModel2(2, 1, 2)
    assert phi_general(m, 3) == pytest.approx(phi_via_bp(m, 3), rel=1e-9)


def test_fixed_points():
    assert len(rc_fixed_points(5, 2, 4)) == 3
    assert rc_fixed_points(5, 1, 4) == [pytest.approx(1.0, abs=1e-12)]
    for q, w, d in [(5, 3, 4), (2.5, 1, 3), (7, 0.2, 6)]:
        assert any(abs(R - 1) < 1e-10 for R in rc_fixed_points(q, w, d))


def test_functional_forms_agree():
    q, w, d = 5.0, 3.0, 4
    m = SpinModel2.random_cluster(q, w)
    for R in (0.1, 1.0, 7.5):
        assert rc_bethe_functional(R, q, w, d) == pytest.approx(bethe_functional(R / (q - 1), m, d), rel=1e-13)
    assert rc_bethe_functional(1.0, q, w, d) == pytest.approx(rank1_value(q, w, d), rel=1e-13)
    top = max(rc_fixed_points(q, w, d))
    assert rc_bethe_functional(top, q, w, d) == pytest.approx(16.315621073058985, abs=1e-8)


def test_functional_large_ratio_limit():
    m = SpinModel2(3.0, 1.0, 2.0, 1.5, 0.7)
    d = 4
    limit = m.mu1 * m.n11 ** (d / 2) + m.mu2 * m.n12 ** d / m.n11 ** (d / 2)
    assert bethe_functional(1e9, m, d) == pytest.approx(limit, rel=1e-7)


def test_w_critical():
    assert w_critical(5, 4) == pytest.approx(2.0, abs=1e-12)
    assert w_critical(10, 4) == pytest.approx(3.0, abs=1e-12)
    for d in (3, 4, 7):
        assert w_critical(2, d) == 2 / (d - 2)
        assert w_critical(2 + 1e-9, d) == pytest.approx(2 / (d - 2), rel=1e-6)
    with pytest.raises(ValueError):
        w_critical(1.9, 4)


def test_critical_curve_monotone():
    for d in (3, 4, 6):
        qs = np.linspace(2.01, 50, 300)
        wc = np.array([w_critical(q, d) for q in qs])
        x, y = 1 + qs / wc, 1 + wc
        order = np.argsort(x)
        assert np.all(np.diff(y[order]) > 0)
        assert np.all(wc <= qs / (d - 2) + 1e-12)


def test_classification():
    assert classify_phase(5, 1, 4).regime == "subcritical"
    r = classify_phase(5, 2, 4)
    assert r.regime == "critical" and r.phi == pytest.approx(9.8, rel=1e-13)
    assert len(r.fixed_points) == 3
    r = classify_phase(5, 3, 4)
    assert r.regime == "supercritical" and r.phi > 12.8
    with pytest.raises(ValueError):
        classify_phase(1.5, 1, 4)
    assert phase_report(1.5, 1, 4).regime is None
    assert phase_report(1.5, 1, 4).note


def test_supercritical_slope_jump():
    for q, d in [(5, 4), (3, 3), (10, 5)]:
        wc, h = w_critical(q, d), 1e-4
        left = (phi(q, wc, d) - phi(q, wc - h, d)) / h
        right = (phi(q, wc + h, d) - phi(q, wc, d)) / h
        assert right > left


def test_bethe_signs_at_interior_critical_points():
    from rcm_lab.rank2 import critical_points
    for q, w, d in [(5, 3, 4), (5, 1, 8), (3, 2, 3), (2.5, 4, 5)]:
        f = canonical_rc_frame(q, w)
        for t in critical_points(f, (1, q - 1), d, lo=0.0, hi=math.pi / 2):
            if 1e-9 < t < math.pi / 2 - 1e-9:
                a1, a2, b1, b2 = f.at(t)
                assert a1 > 0 and a2 > 0 and b1 > 0 > b2


@settings(max_examples=40, deadline=None)
@given(st.floats(2.0, 20), st.floats(0.01, 5), st.floats(0.05, math.pi / 2 - 0.05), st.integers(3, 8))
def test_h_increasing_in_w(q, w, t, d):
    assert h_normalised(q, w * 1.01 + 1e-3, d, t) > h_normalised(q, w, d, t)


@settings(max_examples=40, deadline=None)
@given(st.floats(2.0, 20), st.floats(0.0, 6), st.integers(3, 8))
def test_phi_at_least_rank1(q, w, d):
    p, r = phi(q, w, d), rank1_value(q, w, d)
    assert p >= r * (1 - 1e-10)
    if w > w_critical(q, d) + 1e-6:
        assert p > r


@settings(max_examples=40, deadline=None)
@given(st.floats(1.05, 20), st.floats(0.01, 6), st.integers(3, 8))
def test_trig_equals_bp_rc(q, w, d):
    m = SpinModel2.random_cluster(q, w)
    assert phi_via_bp(m, d) == pytest.approx(phi_general(m, d), rel=1e-9)
    assert len(bp_fixed_points(m, d)) <= 3


def test_tutte_limits():
    d = 8
    assert tutte_limit(6, 2, d).value == pytest.approx(16.277748757985485, abs=1e-9)
    assert tutte_limit(6, 2, d).region == "i"
    k = d - 1
    at_branch = tutte_limit(k, 0.5, d).value
    assert at_branch == pytest.approx(k * (k / (k - 1)) ** (d / 2 - 1), rel=1e-13)
    x = k + 1e-9
    assert tutte_limit(x, 0.5, d).value == pytest.approx(at_branch, rel=1e-8)
    assert tutte_limit(3, 1, d).region == "iii"
    assert tutte_limit(0.5, 3, d).region == "not-covered"
    r = tutte_limit(9, 1.1, d)
    assert r.region == "ii" and r.value == pytest.approx(9 * (1 + 1 / 8) ** 3, rel=1e-13)


def test_tutte_region_boundaries_continuous():
    # region (i) meets the rank-1 value on the q = 2 boundary below w_c(2)
    d = 4
    y = 1.5
    x = 1 + 2 / (y - 1)
    assert tutte_limit(x, y, d).value == pytest.approx(x * (1 + 1 / (x - 1)) ** (d / 2 - 1), rel=1e-12)
