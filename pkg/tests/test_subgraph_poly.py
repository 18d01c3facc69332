import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rcm_lab.graphs import complete_graph, named_graph
from rcm_lab.rank2 import SpinModel2, decompose_signed, r_vector
from rcm_lab.partition import z_spin
from rcm_lab.subgraph_poly import EvenPoly, f_eval, f_monomials, f_z_coeffs, format_profile, key_poly


def test_k5_monomials():
    mono = f_monomials(complete_graph(5), 4)
    assert sum(mono.values()) == 1024
    assert mono[(3, 2, 0, 0, 0)] == 10
    assert mono[(1, 4, 0, 0, 0)] == 15
    assert mono[(0, 0, 0, 0, 5)] == 1
    assert format_profile((3, 2, 0, 0, 0)) == "x0^3 x1^2"


def test_requires_regular_degree():
    with pytest.raises(ValueError):
        f_monomials(complete_graph(5), 3)
    with pytest.raises(ValueError):
        f_eval(named_graph("path:4"), [1, 1, 1])


def test_all_ones_counts_subsets():
    g = named_graph("petersen")
    assert f_eval(g, [1, 1, 1, 1]) == 2 ** 15


def test_even_poly_dense():
    p = EvenPoly((1.0, 2.0, 3.0))
    assert p.degree == 4
    assert list(p.dense()) == [1, 0, 2, 0, 3]
    assert p(2.0) == pytest.approx(1 + 8 + 48)


def test_z_grading_sums_to_f():
    g = named_graph("octahedron")
    x = [0.7, -1.1, 2.0, 0.4, 1.3]
    assert f_z_coeffs(g, x)(1.0) == pytest.approx(f_eval(g, x), rel=1e-12)


def test_key_poly_is_frame_sum():
    m = SpinModel2.random_cluster(5, 3)
    f = decompose_signed(m)
    d, t = 4, 0.3
    v = r_vector(f, m.mu, t, d)
    a1, a2, b1, b2 = f.at(t)
    z = 0.37 + 0.2j
    lhs = np.polyval(key_poly(v)[::-1], z)
    rhs = m.mu1 * (a1 + b1 * z) ** d + m.mu2 * (a2 + b2 * z) ** d
    assert abs(lhs - rhs) < 1e-12 * abs(rhs)


@settings(max_examples=25, deadline=None)
@given(st.floats(1.1, 8.0), st.floats(0.05, 4.0), st.floats(0.0, 2 * math.pi),
       st.sampled_from(["k4", "k5", "octahedron", "cycle:5"]))
def test_rotated_vector_gives_partition_function(q, w, t, name):
    g = named_graph(name)
    d = g.require_regular()
    m = SpinModel2.random_cluster(q, w)
    v = r_vector(decompose_signed(m), m.mu, t, d)
    assert f_eval(g, v) == pytest.approx(z_spin(g, m.N, m.mu), rel=1e-10)
