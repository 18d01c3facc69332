"""Invariant suites over a small built-in corpus, shared by the CLI and the tests."""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bethe import bp_fixed_points, phi_general, phi_via_bp
from .graphs import Graph, girth_and_short_cycles, named_graph, random_regular
from .partition import check_recursion, z1, z2, z_rc, z_rc_via_tutte, z_spin
from .rank2 import SpinModel2, decompose_signed, r_components, r_vector
from .roots import circle_check, free_energy_from_roots, key_circle_check
from .subgraph_poly import f_eval

SLACK = 1e-9
Q_GRID = (1.2, 2.0, 2.5, 5.0)
W_GRID = (0.0, 0.5, 1.0, 3.0)
GIRTH_GRID = (3, 4, 5)
SUITES = ("sandwich", "identities", "bethe", "lower-bound", "circle", "roots")


@dataclass(frozen=True)
class Check:
    suite: str
    case: str
    value: float
    passed: bool

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "passed", bool(self.passed))

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.suite:<12} {self.case:<40} {self.value!r}"


def corpus(seeds=(1, 2, 3)) -> list[Graph]:
    names = ["k4", "k5", "petersen", "octahedron", "cycle:6"]
    return [named_graph(s) for s in names] + [random_regular(10, 3, s) for s in seeds]


def _rel_slack(big: float, small: float) -> float:
    """``(big - small) / |big|``; nonnegative when ``big >= small``."""
    return (big - small) / abs(big) if big else -small


def inequality_checks(g: Graph, q: float, w: float) -> list[Check]:
    """Rank-1 and rank-2 directions and the girth sandwich at one (q, w)."""
    out = []
    tag = f"{g.name} q={q} w={w}"
    z = z_rc(g, q, w)
    r1 = z1(g, q, w)
    s = _rel_slack(z, r1) if q >= 1 else _rel_slack(r1, z)
    out.append(Check("sandwich", f"rank1 {tag}", s, s >= -SLACK))
    if q > 1:
        r2 = z2(g, q, w)
        if q >= 2:
            s = _rel_slack(z, r2)
            out.append(Check("sandwich", f"rank2 {tag}", s, s >= -SLACK))
        if q <= 2:
            s = _rel_slack(r2, z)
            out.append(Check("sandwich", f"rank2-upper {tag}", s, s >= -SLACK))
        if q >= 2:
            for gg in GIRTH_GRID:
                _, L = girth_and_short_cycles(g, gg)
                upper = math.exp((g.n / gg + L) * math.log(q)) * r2
                s = _rel_slack(upper, z)
                out.append(Check("sandwich", f"upper g={gg} {tag}", s, s >= -SLACK))
    return out


def sandwich_suite(graphs=None) -> list[Check]:
    graphs = corpus() if graphs is None else graphs
    return [c for g in graphs for q in Q_GRID for w in W_GRID for c in inequality_checks(g, q, w)]


IDENTITY_POINTS = ((2.0, 1.0), (3.0, 0.5), (2.5, 2.0), (5.0, 3.0))


def identity_suite(n_t: int = 64, seed: int = 0) -> list[Check]:
    out = []
    for name in ("triangle", "k4", "cycle:4"):
        g = named_graph(name)
        for q, w in IDENTITY_POINTS:
            r = check_recursion(g, q, w)
            out.append(Check("identities", f"recursion {name} q={q} w={w}", r, r <= 1e-10))
            a, b = z_rc(g, q, w), z_rc_via_tutte(g, q, w)
            r = abs(a - b) / abs(a)
            out.append(Check("identities", f"tutte {name} q={q} w={w}", r, r <= 1e-10))
    rng = np.random.default_rng(seed)
    ts = rng.uniform(0, 2 * math.pi, n_t)
    for q, w, d in ((5.0, 1.0, 8), (5.0, 3.0, 4), (2.5, 1.0, 3)):
        m = SpinModel2.random_cluster(q, w)
        f = decompose_signed(m)
        v0 = r_vector(f, m.mu, 0.0, d)
        worst_frame = worst_binom = 0.0
        for t in ts:
            a1, a2, b1, b2 = f.at(t)
            rebuilt = np.outer([a1, a2], [a1, a2]) + np.outer([b1, b2], [b1, b2])
            worst_frame = max(worst_frame, float(np.max(np.abs(rebuilt - m.N))))
            c, s = math.cos(t), math.sin(t)
            expand = math.fsum(math.comb(d, j) * v0[j] * c ** (d - j) * s ** j for j in range(d + 1))
            direct = float(r_components(f, m.mu, t, d, 0))
            worst_binom = max(worst_binom, abs(expand - direct) / max(1.0, abs(direct)))
        out.append(Check("identities", f"rotation q={q} w={w} d={d}", worst_frame, worst_frame <= 1e-10))
        out.append(Check("identities", f"binomial q={q} w={w} d={d}", worst_binom, worst_binom <= 1e-10))
    for name, q, w in (("k4", 3.0, 1.0), ("k5", 5.0, 3.0), ("petersen", 2.5, 1.0)):
        g = named_graph(name)
        d = g.require_regular()
        m = SpinModel2.random_cluster(q, w)
        f = decompose_signed(m)
        zs = z_spin(g, m.N, m.mu)
        worst = max(abs(f_eval(g, r_vector(f, m.mu, t, d)) - zs) / zs for t in ts[:8])
        out.append(Check("identities", f"F(v(t)) = Z {name}", worst, worst <= 1e-10))
    return out


def random_models(count: int, seed: int = 0) -> list[tuple[SpinModel2, int]]:
    """Random valid models with ``N = a a^T + b b^T`` and ``N12 > 0``."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        a = rng.uniform(0.1, 3.0, 2)
        b = rng.uniform(-3.0, 3.0, 2)
        N = np.outer(a, a) + np.outer(b, b)
        if N[0, 1] <= 1e-3 or np.linalg.det(N) <= 1e-6:
            continue
        mu = rng.uniform(0.1, 5.0, 2)
        d = int(rng.integers(3, 9))
        out.append((SpinModel2(N[0, 0], N[0, 1], N[1, 1], mu[0], mu[1]), d))
    return out


def bethe_check(m: SpinModel2, d: int, case: str) -> list[Check]:
    a, b = phi_general(m, d), phi_via_bp(m, d)
    r = abs(a - b) / a
    k = len(bp_fixed_points(m, d))
    return [Check("bethe", f"trig=bp {case}", r, r <= 1e-9),
            Check("bethe", f"#fixed points {case}", float(k), 1 <= k <= 3)]


def bethe_suite(n_random: int = 200, seed: int = 0) -> list[Check]:
    out = []
    for i, (m, d) in enumerate(random_models(n_random, seed)):
        out += bethe_check(m, d, f"random#{i} d={d}")
    for q in (1.2, 2.0, 2.5, 5.0, 10.0):
        for w in (0.5, 1.0, 2.0, 3.0):
            for d in (3, 4, 8):
                out += bethe_check(SpinModel2.random_cluster(q, w), d, f"rc q={q} w={w} d={d}")
    return out


def lower_bound_suite(graphs=None) -> list[Check]:
    graphs = corpus() if graphs is None else graphs
    out = []
    for g in graphs:
        d = g.require_regular()
        for q in Q_GRID:
            for w in W_GRID[1:]:
                m = SpinModel2.random_cluster(q, w)
                zs = z_spin(g, m.N, m.mu)
                gap = math.log(zs) - g.n * math.log(phi_general(m, d))
                out.append(Check("lower-bound", f"{g.name} q={q} w={w}", gap, gap >= math.log1p(-SLACK)))
    return out


CIRCLE_MODELS = ((5.0, 3.0), (3.0, 1.0), (2.5, 0.5))


def circle_suite(graphs=None) -> list[Check]:
    graphs = corpus() if graphs is None else graphs
    out = []
    for q, w in CIRCLE_MODELS:
        m = SpinModel2.random_cluster(q, w)
        for g in graphs:
            d = g.require_regular()
            rep = circle_check(g, m, d)
            out.append(Check("circle", f"{g.name} q={q} w={w}", rep.max_radial_deviation,
                             rep.max_radial_deviation <= 1e-5))
        for d in (3, 4, 8):
            rep = key_circle_check(m, d)
            out.append(Check("circle", f"key d={d} q={q} w={w}", rep.max_radial_deviation,
                             rep.max_radial_deviation <= 1e-8))
    return out


def roots_suite() -> list[Check]:
    out = []
    m = SpinModel2.random_cluster(5.0, 3.0)
    for name in ("k5", "octahedron"):
        fe = free_energy_from_roots(named_graph(name), m, 4)
        out.append(Check("roots", f"free energy {name} q=5 w=3", fe.residual, fe.residual <= 1e-6))
    fe = free_energy_from_roots(named_graph("k4"), SpinModel2(2.0, 1.0, 2.0, 1.0, 2.0), 3)
    out.append(Check("roots", "free energy k4 ising mu=(1,2)", fe.residual, fe.residual <= 1e-6))
    try:
        free_energy_from_roots(named_graph("k5"), SpinModel2.random_cluster(5.0, 2.0), 4)
        out.append(Check("roots", "refusal at w_c", 0.0, False))
    except ValueError:
        out.append(Check("roots", "refusal at w_c", 1.0, True))
    return out


_RUNNERS = {
    "sandwich": sandwich_suite,
    "identities": identity_suite,
    "bethe": bethe_suite,
    "lower-bound": lower_bound_suite,
    "circle": circle_suite,
    "roots": roots_suite,
}


def worker_count() -> int:
    raw = os.environ.get("RCM_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_one(name: str) -> list[Check]:
    return _RUNNERS[name]()


def run_suites(names=SUITES, workers: int | None = None) -> list[Check]:
    """Run the named suites; results come back in the order the suites were named."""
    names = list(names)
    unknown = set(names) - set(_RUNNERS)
    if unknown:
        raise ValueError(f"unknown suite(s): {sorted(unknown)}")
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(names))) as pool:
            chunks = list(pool.map(_run_one, names))
    else:
        chunks = [_run_one(n) for n in names]
    return [c for chunk in chunks for c in chunk]
