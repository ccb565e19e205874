"""Immutable graphs and brute-force induced-subgraph oracles.

Vertices are 0..n-1.  Edges are unordered pairs stored as (u, v) with
u < v.  The enumeration oracles come in two deliberately independent
routes: a naive route that scans vertex subsets, and a pruned route
that walks the graph.  Tests require the two routes to agree exactly;
everything downstream (family predicates, protocol listings, the
distributed listing algorithm) is validated against these oracles.

All enumeration entry points accept a work budget.  The naive routes
refuse up front when the subset count alone exceeds the budget; the
pruned routes count search-tree expansions and abort mid-flight.
"""

from __future__ import annotations

import math
import random
from collections import deque
from itertools import combinations
from typing import Iterable

DEFAULT_WORK_BUDGET = 10**9

__all__ = [
    "DEFAULT_WORK_BUDGET",
    "Graph",
    "WorkBudgetExceeded",
    "connected_components",
    "crossing_edges",
    "diameter",
    "eccentricity",
    "induced_edge_count",
    "induced_edges",
    "is_induced_cycle",
    "is_induced_diamond",
    "list_induced_cycles",
    "list_induced_cycles_naive",
    "list_induced_diamonds",
    "list_induced_diamonds_naive",
    "random_graph",
]


class WorkBudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its work budget."""

    def __init__(self, message: str, estimate: int, budget: int):
        super().__init__(f"{message} (estimate {estimate} > budget {budget})")
        self.estimate = estimate
        self.budget = budget


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph with precomputed adjacency sets."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = set()
        for u, v in edges:
            u, v = _normalize_edge(u, v)
            if not (0 <= u and v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            normalized.add((u, v))
        self.n = n
        self.edges: frozenset[tuple[int, int]] = frozenset(normalized)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in normalized:
            adj[u].add(v)
            adj[v].add(u)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        return (u, v) in self.edges if u < v else (v, u) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def to_text(self) -> str:
        """Canonical text form: 'n m' header, then one 'u v' line per edge.

        Edges are written with u < v and sorted, so equal graphs produce
        byte-identical text.
        """
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in sorted(self.edges))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        """Parse the text form; edge order and endpoint order are not required."""
        rows = [line.split() for line in text.splitlines() if line.strip()]
        if not rows:
            raise ValueError("empty graph text")
        if len(rows[0]) != 2:
            raise ValueError(f"bad header line: {rows[0]!r}")
        n, m = int(rows[0][0]), int(rows[0][1])
        if len(rows) - 1 != m:
            raise ValueError(f"header claims {m} edges, found {len(rows) - 1}")
        edges = []
        for row in rows[1:]:
            if len(row) != 2:
                raise ValueError(f"bad edge line: {row!r}")
            edges.append((int(row[0]), int(row[1])))
        g = cls(n, edges)
        if g.m != m:
            raise ValueError(f"duplicate edges: header claims {m}, got {g.m}")
        return g


def induced_edges(g: Graph, vs: Iterable[int]) -> frozenset[tuple[int, int]]:
    """Edges of g with both endpoints in vs."""
    s = set(vs)
    return frozenset(
        (u, v) for u in s for v in g.adj[u] if v in s and u < v
    )


def induced_edge_count(g: Graph, vs: Iterable[int]) -> int:
    return len(induced_edges(g, vs))


def is_induced_cycle(g: Graph, vs: Iterable[int]) -> bool:
    """True when vs induces a single chordless cycle (so |vs| >= 3).

    Exactly |vs| induced edges with every induced degree 2 forces a
    disjoint union of cycles; connectivity then forces a single one.
    """
    s = frozenset(vs)
    k = len(s)
    if k < 3:
        return False
    degs = {v: len(g.adj[v] & s) for v in s}
    if any(d != 2 for d in degs.values()):
        return False
    if induced_edge_count(g, s) != k:
        return False
    start = next(iter(s))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u] & s:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == k


def is_induced_diamond(g: Graph, vs: Iterable[int]) -> bool:
    """True when vs induces a diamond: 4 vertices carrying 5 of the 6 pairs."""
    s = frozenset(vs)
    return len(s) == 4 and induced_edge_count(g, s) == 5


def _check_naive_budget(n: int, k: int, budget: int) -> None:
    count = math.comb(n, k)
    if count > budget:
        raise WorkBudgetExceeded(
            f"naive scan over {k}-subsets of {n} vertices", count, budget
        )


def list_induced_cycles_naive(
    g: Graph, k: int, budget: int = DEFAULT_WORK_BUDGET
) -> list[tuple[int, ...]]:
    """Subset-scan route: test every k-subset with the induced-cycle check."""
    if k < 3:
        raise ValueError("cycles need k >= 3")
    _check_naive_budget(g.n, k, budget)
    return [
        vs for vs in combinations(range(g.n), k) if is_induced_cycle(g, vs)
    ]


def list_induced_cycles(
    g: Graph, k: int, budget: int = DEFAULT_WORK_BUDGET
) -> list[tuple[int, ...]]:
    """Pruned route: grow induced paths from each anchor vertex.

    A cycle is reported once, anchored at its minimum vertex, with the
    tie between the two traversal directions broken by requiring the
    second path vertex to be smaller than the closing vertex.  Returned
    tuples are the sorted vertex sets.
    """
    if k < 3:
        raise ValueError("cycles need k >= 3")
    out: list[tuple[int, ...]] = []
    work = 0
    adj = g.adj

    def extend(path: list[int], banned: set[int]) -> None:
        # banned holds the path plus the neighborhoods of every path
        # vertex except the anchor and the current endpoint; anchor
        # adjacency is forbidden while growing and required when closing.
        nonlocal work
        s = path[0]
        last = path[-1]
        if len(path) == k - 1:
            for w in adj[last] & adj[s]:
                work += 1
                if work > budget:
                    raise WorkBudgetExceeded("pruned cycle search", work, budget)
                if w > s and w not in banned and path[1] < w:
                    out.append(tuple(sorted(path + [w])))
            return
        for w in adj[last]:
            work += 1
            if work > budget:
                raise WorkBudgetExceeded("pruned cycle search", work, budget)
            if w <= s or w in banned or w in adj[s]:
                continue
            path.append(w)
            extend(path, banned | adj[last] | {w})
            path.pop()

    for s in range(g.n):
        for v1 in sorted(adj[s]):
            work += 1
            if work > budget:
                raise WorkBudgetExceeded("pruned cycle search", work, budget)
            if v1 <= s:
                continue
            if k == 3:
                for w in adj[v1] & adj[s]:
                    work += 1
                    if work > budget:
                        raise WorkBudgetExceeded("pruned cycle search", work, budget)
                    if w > v1:
                        out.append((s, v1, w))
                continue
            extend([s, v1], {s, v1})
    return sorted(out)


def list_induced_diamonds_naive(
    g: Graph, budget: int = DEFAULT_WORK_BUDGET
) -> list[tuple[int, ...]]:
    """Subset-scan route: test every 4-subset for exactly five induced edges."""
    _check_naive_budget(g.n, 4, budget)
    return [
        vs for vs in combinations(range(g.n), 4) if induced_edge_count(g, vs) == 5
    ]


def list_induced_diamonds(
    g: Graph, budget: int = DEFAULT_WORK_BUDGET
) -> list[tuple[int, ...]]:
    """Pruned route, keyed on the spine.

    A diamond has a unique edge joining its two degree-3 vertices (the
    spine); the other two vertices are common neighbors of the spine
    that are mutually non-adjacent.  Scanning spines therefore reports
    each diamond exactly once.
    """
    out: list[tuple[int, ...]] = []
    work = 0
    for a, b in sorted(g.edges):
        common = sorted(g.adj[a] & g.adj[b])
        for i in range(len(common)):
            for j in range(i + 1, len(common)):
                work += 1
                if work > budget:
                    raise WorkBudgetExceeded("pruned diamond search", work, budget)
                c, d = common[i], common[j]
                if not g.has_edge(c, d):
                    out.append(tuple(sorted((a, b, c, d))))
    return sorted(out)


def crossing_edges(g: Graph, side: Iterable[int]) -> frozenset[tuple[int, int]]:
    """Edges with exactly one endpoint in *side*."""
    s = set(side)
    return frozenset(e for e in g.edges if (e[0] in s) != (e[1] in s))


def random_graph(n: int, density: float, rng: random.Random) -> Graph:
    """Each of the n*(n-1)/2 pairs is an edge independently with
    probability *density*; pair order is fixed so a seeded rng gives a
    reproducible graph."""
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < density
    ]
    return Graph(n, edges)


def connected_components(
    g: Graph, within: Iterable[int] | None = None
) -> list[frozenset[int]]:
    """Components of the subgraph induced on *within* (whole graph if None).

    Returned sorted by minimum member, so the order is deterministic.
    """
    allowed = set(g.vertices()) if within is None else set(within)
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for start in sorted(allowed):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def _bfs_ecc(g: Graph, src: int) -> tuple[int, int]:
    """(eccentricity, reached count) from src."""
    dist = {src: 0}
    queue = deque([src])
    ecc = 0
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                ecc = max(ecc, dist[w])
                queue.append(w)
    return ecc, len(dist)


def diameter(g: Graph) -> float:
    """Max shortest-path distance; math.inf when disconnected, 0 when n <= 1."""
    if g.n <= 1:
        return 0
    best = 0
    for v in g.vertices():
        ecc, reached = _bfs_ecc(g, v)
        if reached != g.n:
            return math.inf
        best = max(best, ecc)
    return best


def eccentricity(g: Graph, src: int) -> float:
    """Max distance from src; math.inf when src does not reach everything."""
    ecc, reached = _bfs_ecc(g, src)
    return ecc if reached == g.n else math.inf
