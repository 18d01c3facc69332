"""Random cluster partition function, its rank-1/rank-2 approximations and the Tutte oracle.

Two independent routes to ``Z_G(q, w)``:

* :func:`rc_census` enumerates every edge subset once and records the exact
  integer count of subsets with ``k(A)`` components and ``|A|`` edges;
  :func:`z_rc` then evaluates ``sum q^k w^|A|`` from that census.
* :func:`tutte` runs memoised deletion-contraction in exact integers and
  :func:`z_rc_via_tutte` evaluates through the Tutte relation.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from .config import CAPS, CapExceeded
from .graphs import Graph, UnionFind, components, all_edges

Number = float | Fraction


class BivariatePoly:
    """Integer polynomial in (x, y) stored as ``{(i, j): coefficient}`` with no zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, int], int] = {
            k: int(c) for k, c in (terms or {}).items() if c
        }

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BivariatePoly":
        return cls({(i, j): c})

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = Counter(self.terms)
        out.update(other.terms)
        return BivariatePoly(out)

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        out: Counter = Counter()
        for (i, j), c in self.terms.items():
            for (k, l), e in other.terms.items():
                out[i + k, j + l] += c * e
        return BivariatePoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePoly) and self.terms == other.terms

    def __call__(self, x, y):
        # exact for int/Fraction arguments
        return sum(c * x ** i * y ** j for (i, j), c in self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(s for s in (f"x^{i}" if i else "", f"y^{j}" if j else "") if s)
            parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts)


def _check_edges(g: Graph, cap: int) -> None:
    if g.m > cap:
        raise CapExceeded(f"{g.m} edges exceeds the enumeration cap of {cap}")


@lru_cache(maxsize=64)
def rc_census(g: Graph, cap: int = CAPS.edges) -> dict[tuple[int, int], int]:
    """Exact counts ``{(k(A), |A|): #A}`` over all edge subsets A.

    Depth-first over edges with a rollback union-find, so each of the
    ``2^m`` leaves costs O(1) amortised work beyond the branch itself.
    """
    _check_edges(g, cap)
    uf = UnionFind(g.n)
    counts: Counter = Counter()
    edges = g.edges
    m = len(edges)

    def rec(i: int, size: int) -> None:
        if i == m:
            counts[uf.count, size] += 1
            return
        rec(i + 1, size)
        u, v = edges[i]
        uf.union(u, v)
        rec(i + 1, size + 1)
        uf.undo()

    rec(0, 0)
    return dict(counts)


def _eval_census(census, q, w):
    if isinstance(q, Fraction) or isinstance(w, Fraction):
        return sum(c * Fraction(q) ** k * Fraction(w) ** s for (k, s), c in census.items())
    return math.fsum(c * q ** k * w ** s for (k, s), c in census.items())


def z_rc(g: Graph, q: Number, w: Number, cap: int = CAPS.edges) -> Number:
    """``Z_G(q, w) = sum_A q^k(A) w^|A|``, exact when q and w are Fractions."""
    return _eval_census(rc_census(g, cap), q, w)


def z_rc_bruteforce(g: Graph, q: float, w: float) -> float:
    """Direct subset loop, kept as an oracle for the census route."""
    _check_edges(g, 20)
    return math.fsum(
        q ** components(g, a) * w ** a.bit_count() for a in range(1 << g.m)
    )


# -- Tutte polynomial -------------------------------------------------------

def _canonical(n: int, edges) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Relabel vertices by first appearance in the sorted edge list; drop isolated ones."""
    label: dict[int, int] = {}
    out = []
    for u, v in sorted(edges):
        for x in (u, v):
            if x not in label:
                label[x] = len(label)
        a, b = label[u], label[v]
        out.append((a, b) if a <= b else (b, a))
    return len(label), tuple(sorted(out))


def _connected(n: int, edges, a: int, b: int) -> bool:
    uf = UnionFind(n)
    for u, v in edges:
        uf.union(u, v)
    return uf.find(a) == uf.find(b)


@lru_cache(maxsize=None)
def _tutte_rec(n: int, edges: tuple[tuple[int, int], ...]) -> BivariatePoly:
    if not edges:
        return BivariatePoly.monomial(0, 0)
    loops = sum(1 for u, v in edges if u == v)
    if loops:
        rest = tuple(e for e in edges if e[0] != e[1])
        return BivariatePoly.monomial(0, loops) * _tutte_rec(*_canonical(n, rest))
    # branch on the edge whose endpoints carry the most parallel copies
    mult = Counter(edges)
    (u, v), k = max(mult.items(), key=lambda kv: (kv[1], kv[0]))
    rest = [e for e in edges if e != (u, v)]
    if not _connected(n, rest, u, v):
        # a bundle of k parallel bridges-in-series: x + y + ... + y^(k-1)
        factor = BivariatePoly({(1, 0): 1, **{(0, j): 1 for j in range(1, k)}})
        merged = [(u if a == v else a, u if b == v else b) for a, b in rest]
        return factor * _tutte_rec(*_canonical(n, merged))
    # delete one copy, contract one copy (the other k-1 copies become loops)
    deleted = rest + [(u, v)] * (k - 1)
    contracted = [(u if a == v else a, u if b == v else b) for a, b in rest]
    contracted += [(u, u)] * (k - 1)
    return _tutte_rec(*_canonical(n, deleted)) + _tutte_rec(*_canonical(n, contracted))


def tutte(g: Graph, cap: int = CAPS.tutte_edges) -> BivariatePoly:
    """Exact Tutte polynomial by memoised deletion-contraction."""
    _check_edges(g, cap)
    return _tutte_rec(*_canonical(g.n, g.edges))


def z_rc_via_tutte(g: Graph, q: Number, w: Number, cap: int = CAPS.tutte_edges) -> Number:
    """Z through ``T(1 + q/w, 1 + w)``; exact when q and w are Fractions."""
    if q == 0 or w == 0:
        raise ValueError("Tutte relation needs q != 0 and w != 0")
    t = tutte(g, cap)
    kE = components(g, all_edges(g))
    if isinstance(q, Fraction) or isinstance(w, Fraction):
        q, w = Fraction(q), Fraction(w)
        return (q / w) ** kE * w ** g.n * t(1 + q / w, 1 + w)
    x, y = 1.0 + q / w, 1.0 + w
    val = math.fsum(c * x ** i * y ** j for (i, j), c in t.terms.items())
    return (q / w) ** kE * w ** g.n * val


# -- approximations ---------------------------------------------------------

def z1(g: Graph, q: float, w: float) -> float:
    """Rank-1 approximation ``q^v(G) (1 + w/q)^e(G)``."""
    if q <= 0:
        raise ValueError("rank-1 approximation needs q > 0")
    return q ** g.n * (1 + w / q) ** g.m


def _vertex_masks(n: int, cap: int):
    if n > cap:
        raise CapExceeded(f"{n} vertices exceeds the vertex-subset cap of {cap}")
    chunk = 1 << min(n, 18)
    for start in range(0, 1 << n, chunk):
        yield np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)


@lru_cache(maxsize=64)
def rank2_census(g: Graph, cap: int = CAPS.vertices) -> dict[tuple[int, int, int], int]:
    """Exact counts ``{(|S|, e(S), e(V-S)): #S}`` over all vertex subsets S."""
    counts: Counter = Counter()
    us = np.array([u for u, _ in g.edges], dtype=np.int64)
    vs = np.array([v for _, v in g.edges], dtype=np.int64)
    for masks in _vertex_masks(g.n, cap):
        bits_u = (masks[:, None] >> us[None, :]) & 1
        bits_v = (masks[:, None] >> vs[None, :]) & 1
        inside = (bits_u & bits_v).sum(axis=1)
        outside = ((1 - bits_u) & (1 - bits_v)).sum(axis=1)
        size = np.zeros_like(masks)
        for v in range(g.n):
            size += (masks >> v) & 1
        key = (size * (g.m + 1) + inside) * (g.m + 1) + outside
        uniq, cnt = np.unique(key, return_counts=True)
        for k, c in zip(uniq.tolist(), cnt.tolist()):
            rest, e_out = divmod(k, g.m + 1)
            s, e_in = divmod(rest, g.m + 1)
            counts[s, e_in, e_out] += c
    return dict(counts)


def z2(g: Graph, q: float, w: float, cap: int = CAPS.vertices) -> float:
    """Rank-2 approximation: sum over S of (1+w)^e(S) (q-1)^(n-|S|) (1+w/(q-1))^e(V-S)."""
    if q <= 1:
        raise ValueError("rank-2 approximation needs q > 1")
    census = rank2_census(g, cap)
    inner = 1 + w / (q - 1)
    return math.fsum(
        c * (1 + w) ** e_in * (q - 1) ** (g.n - s) * inner ** e_out
        for (s, e_in, e_out), c in census.items()
    )


def log_z2(g: Graph, q: float, w: float, cap: int = CAPS.vertices) -> float:
    """``ln Z^(2)`` computed in the log domain (safe for large graphs)."""
    if q <= 1:
        raise ValueError("rank-2 approximation needs q > 1")
    census = rank2_census(g, cap)
    inner = math.log1p(w / (q - 1))
    logs = np.array([
        math.log(c) + e_in * math.log1p(w) + (g.n - s) * math.log(q - 1) + e_out * inner
        for (s, e_in, e_out), c in census.items()
    ])
    top = logs.max()
    return float(top + math.log(math.fsum(np.exp(logs - top))))


def rc_matrix(q: float, w: float) -> tuple[np.ndarray, np.ndarray]:
    """The 2-spin surrogate ``(M'_2, nu_2)`` of the random cluster model."""
    if q <= 1:
        raise ValueError("the 2-spin surrogate needs q > 1")
    N = np.array([[1 + w, 1.0], [1.0, 1 + w / (q - 1)]])
    return N, np.array([1.0, q - 1])


def z_spin(g: Graph, N, mu, cap: int = CAPS.spin_work) -> float:
    """Exact ``sum_sigma prod_v mu_sigma(v) prod_(u,v) N_sigma(u),sigma(v)``."""
    N = np.asarray(N, dtype=float)
    mu = np.asarray(mu, dtype=float)
    r = len(mu)
    if N.shape != (r, r):
        raise ValueError("N must be r x r with r = len(mu)")
    if r ** g.n > cap:
        raise CapExceeded(f"{r}^{g.n} spin configurations exceeds cap {cap}")
    total = []
    chunk = 1 << 16
    n_conf = r ** g.n
    powers = r ** np.arange(g.n, dtype=np.int64)
    for start in range(0, n_conf, chunk):
        idx = np.arange(start, min(start + chunk, n_conf), dtype=np.int64)
        spins = (idx[:, None] // powers[None, :]) % r
        weight = np.prod(mu[spins], axis=1)
        for u, v in g.edges:
            weight = weight * N[spins[:, u], spins[:, v]]
        total.append(weight)
    return math.fsum(np.concatenate(total))


def check_recursion(g: Graph, q: float, w: float) -> float:
    """Relative residual of ``Z_G(q,w) = sum_S (1+w)^e(S) Z_{G-S}(q-1, w)``."""
    lhs = z_rc(g, q, w)
    terms = []
    for size in range(g.n + 1):
        for S in combinations(range(g.n), size):
            sset = set(S)
            rest = [v for v in range(g.n) if v not in sset]
            e_in = g.induced_edge_count(S)
            terms.append((1 + w) ** e_in * _z_induced(g, rest, q - 1, w))
    rhs = math.fsum(terms)
    return abs(lhs - rhs) / abs(lhs) if lhs else abs(rhs)


def _z_induced(g: Graph, keep, q, w) -> float:
    if not keep:
        return 1.0
    index = {v: i for i, v in enumerate(keep)}
    sub = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return z_rc(Graph(len(keep), tuple(sub)), q, w)
