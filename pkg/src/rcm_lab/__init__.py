"""Exact and Bethe-type computations for the random cluster model on regular graphs."""
from .bethe import (
    PhaseReport,
    bp_fixed_points,
    classify_phase,
    phi,
    phi_general,
    phi_star,
    phi_t,
    phi_via_bp,
    tutte_limit,
    w_critical,
)
from .graphs import Graph, load_graph, named_graph, random_regular
from .partition import tutte, z1, z2, z_rc, z_rc_via_tutte, z_spin
from .rank2 import SpinModel2, circle_radius, find_t0, find_t1, r_vector
from .roots import circle_check, even_poly_roots, free_energy_from_roots, poly_roots
from .subgraph_poly import f_eval, f_monomials, f_z_coeffs, key_poly

__version__ = "0.1.0"
