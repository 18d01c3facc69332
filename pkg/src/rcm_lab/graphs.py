"""Graph construction plus the component and cycle censuses used elsewhere.

Edge subsets are plain Python ints used as bitmasks over edge indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices ``0..n-1``; loops and parallel edges allowed."""

    n: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        norm = []
        for e in self.edges:
            u, v = (int(x) for x in e)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def simple(self) -> bool:
        return all(u != v for u, v in self.edges) and len(set(self.edges)) == self.m

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def regular_degree(self) -> int | None:
        """Common degree if the graph is regular, else None."""
        ds = set(self.degrees)
        return ds.pop() if len(ds) == 1 else None

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def require_regular(self, d: int | None = None) -> int:
        deg = self.regular_degree
        if not self.simple or deg is None:
            raise ValueError(f"graph {self.name or ''} is not simple and regular")
        if d is not None and deg != d:
            raise ValueError(f"graph is {deg}-regular, expected {d}")
        return deg

    def induced_edge_count(self, vertices) -> int:
        s = set(vertices)
        return sum(1 for u, v in self.edges if u in s and v in s)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def load_graph(text: str, name: str = "") -> Graph:
    """Parse the edge-list format: a header ``n m`` then ``m`` lines ``u v``."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph document")

    def ints(i: int, ln: str) -> tuple[int, int]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {i + 1}: expected two integers, got {ln!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"line {i + 1}: malformed integers in {ln!r}") from exc

    n, m = ints(0, lines[0])
    if n <= 0:
        raise ValueError(f"vertex count must be positive, got {n}")
    if m < 0 or len(lines) - 1 != m:
        raise ValueError(f"header declares {m} edges, found {len(lines) - 1}")
    edges = [ints(i, ln) for i, ln in enumerate(lines[1:], start=1)]
    return Graph(n, tuple(edges), name=name)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, tuple(combinations(range(n), 2)), name=f"complete:{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), name=f"cycle:{n}")


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)), name=f"path:{n}")


def circulant_graph(n: int, steps) -> Graph:
    edges = set()
    for s in steps:
        if not 0 < s <= n // 2:
            raise ValueError(f"circulant step {s} out of range for n={n}")
        for i in range(n):
            u, v = i, (i + s) % n
            edges.add((min(u, v), max(u, v)))
    return Graph(n, tuple(sorted(edges)), name=f"circulant:{n}:" + ",".join(map(str, steps)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner), name="petersen")


def octahedron_graph() -> Graph:
    # K_{2,2,2}: antipodal pairs (0,1), (2,3), (4,5) are the only non-edges
    edges = [(u, v) for u, v in combinations(range(6), 2) if v != u + 1 or u % 2]
    return Graph(6, tuple(edges), name="octahedron")


def named_graph(name: str) -> Graph:
    """Build a graph from an identifier such as ``k5``, ``cycle:6`` or ``circulant:8:1,2``."""
    key = name.strip().lower()
    parts = key.split(":")
    head = parts[0]
    try:
        if key == "petersen":
            return petersen_graph()
        if key == "octahedron":
            return octahedron_graph()
        if key == "triangle":
            return Graph(3, ((0, 1), (1, 2), (0, 2)), name="triangle")
        if len(parts) == 1 and head.startswith("k") and head[1:].isdigit():
            g = complete_graph(int(head[1:]))
            return Graph(g.n, g.edges, name=key)
        if head == "complete" and len(parts) == 2:
            return complete_graph(int(parts[1]))
        if head == "cycle" and len(parts) == 2:
            return cycle_graph(int(parts[1]))
        if head == "path" and len(parts) == 2:
            return path_graph(int(parts[1]))
        if head == "circulant" and len(parts) == 3:
            return circulant_graph(int(parts[1]), [int(s) for s in parts[2].split(",")])
    except ValueError as exc:
        raise ValueError(f"invalid parameters in graph id {name!r}: {exc}") from exc
    raise ValueError(f"unknown graph id {name!r}")


def random_regular(n: int, d: int, seed: int, max_attempts: int = 10_000) -> Graph:
    """Configuration-model pairing, rejecting and resampling any loop or parallel edge."""
    if (n * d) % 2:
        raise ValueError("n * d must be even")
    if not 0 <= d < n:
        raise ValueError("need 0 <= d < n")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_attempts):
        perm = rng.permutation(stubs).reshape(-1, 2)
        perm.sort(axis=1)
        if np.any(perm[:, 0] == perm[:, 1]):
            continue
        pairs = {tuple(map(int, p)) for p in perm}
        if len(pairs) != len(perm):
            continue
        return Graph(n, tuple(sorted(pairs)), name=f"rrg:{n}:{d}:{seed}")
    raise RuntimeError(f"no simple {d}-regular pairing on {n} vertices in {max_attempts} attempts")


class UnionFind:
    """Union by size without path compression, so unions can be rolled back."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n
        self._history: list[int] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self._history.append(-1)
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        self._history.append(rb)
        return True

    def undo(self) -> None:
        rb = self._history.pop()
        if rb < 0:
            return
        ra = self.parent[rb]
        self.parent[rb] = rb
        self.size[ra] -= self.size[rb]
        self.count += 1


def components(g: Graph, a: int = 0) -> int:
    """Number of connected components k(A) of (V, A); ``a`` is an edge bitmask."""
    uf = UnionFind(g.n)
    for i, (u, v) in enumerate(g.edges):
        if a >> i & 1:
            uf.union(u, v)
    return uf.count


def all_edges(g: Graph) -> int:
    return (1 << g.m) - 1


def cycle_lengths(g: Graph, max_len: int) -> dict[int, int]:
    """Count cycles of each length ``3..max_len`` by canonical backtracking.

    A cycle is rooted at its smallest vertex and walked only through larger
    vertices; each undirected cycle is then found in both directions.
    """
    if not g.simple:
        raise ValueError("cycle census needs a simple graph")
    adj = g.adjacency
    counts = {k: 0 for k in range(3, max_len + 1)}
    for s in range(g.n):
        on_path = [False] * g.n
        on_path[s] = True

        def walk(v: int, length: int) -> None:
            for u in adj[v]:
                if u == s and length >= 3:
                    counts[length] += 1
                elif u > s and not on_path[u] and length < max_len:
                    on_path[u] = True
                    walk(u, length + 1)
                    on_path[u] = False

        walk(s, 1)
    return {k: c // 2 for k, c in counts.items()}


def girth_and_short_cycles(g: Graph, gcap: int) -> tuple[float, int]:
    """Return (girth, L) where L counts cycles of length at most ``gcap - 1``.

    Girth is ``math.inf`` for forests.
    """
    if gcap < 3:
        raise ValueError("gcap must be >= 3")
    short = cycle_lengths(g, gcap - 1) if gcap - 1 >= 3 else {}
    L = sum(short.values())
    girth = min((k for k, c in short.items() if c), default=None)
    if girth is None:
        girth = _girth_bfs(g)
    return girth, L


def _girth_bfs(g: Graph) -> float:
    best = float("inf")
    adj = g.adjacency
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for u in adj[v]:
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        parent[u] = v
                        nxt.append(u)
                    elif parent[v] != u:
                        best = min(best, dist[u] + dist[v] + 1)
            frontier = nxt
    return best
