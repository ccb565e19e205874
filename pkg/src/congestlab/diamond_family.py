"""Two-input family whose target is an induced diamond split 2+2 across the cut.

The fixture is an input-independent random scaffold: side A holds n
vertices in sqrt(n) blocks, side B holds a same-shaped mirror plus a
second block of n vertices matched one-to-one with A.  Every pair of
(A block, B block) is joined by a random bijection, so the cut has
n^{3/2} + n edges while each vertex keeps degree about sqrt(n).

A cross-block pair (a, a') with exactly one common neighbor is "good".
Each good pair with exactly one endpoint in a sampled half A* of A
becomes a candidate slot: a 1-bit of x adds the A-internal edge
(a1, a2) where a1 is the A*-member, and a 1-bit of y adds the B-internal
edge (b1, b2) where b1 is the pair's unique common neighbor and b2 is
a1's matched partner.  Slots whose (b1, b2) repeats an earlier slot are
dropped.  Under these conventions the graph contains an induced diamond
with exactly two vertices on each side precisely when x and y share a 1,
for every seed:

* The shared slot k gives the diamond {a1, a2, b1, b2} with spine
  (a1, b1) and missing pair (a2, b2).
* No other 2+2 diamond can appear.  Five edges on a 2+2 split need at
  least one of the two internal pairs.  Four cut edges plus one
  internal is impossible: an x-edge pair is good (one common neighbor,
  not two), and a y-edge needs a partner vertex, which has a unique
  A-neighbor.  Three cut edges plus both internal pairs force the
  x-slot and y-slot to coincide: the x-pair's unique common neighbor
  pins b1, the partner structure pins b2 to one endpoint, and the
  A*-membership plus the (b1, b2) dedup rule out every mismatched
  combination.

Note diamonds with a 3+1 split do arise from y alone (two slots sharing
a1 share b2), which is why the family's predicate counts only the
balanced ones.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .families import FamilyInstance, InputPair
from .graphs import DEFAULT_WORK_BUDGET, Graph, crossing_edges, list_induced_diamonds

__all__ = [
    "DiamondFixture",
    "build_diamond_family",
    "build_diamond_fixture",
    "diamond_cut_size",
    "find_fixture_seed",
    "good_pair_ratio",
    "has_two_two_diamond",
    "list_two_two_diamonds",
]


@dataclass(frozen=True)
class DiamondFixture:
    """Input-independent scaffold for the diamond family.

    ``graph`` carries only the fixture edges (block bijections and the
    A-to-partner matching).  ``quadruples`` holds the kept slots as
    (a1, a2, b1, b2) vertex ids, sorted; its length is the bit count
    of the input pairs this fixture accepts.
    """

    n: int
    seed: int
    block_size: int
    graph: Graph
    a_vertices: tuple[int, ...]
    b_vertices: tuple[int, ...]
    partner_vertices: tuple[int, ...]
    a_blocks: tuple[tuple[int, ...], ...]
    b_blocks: tuple[tuple[int, ...], ...]
    good_pairs: tuple[tuple[int, int], ...]
    astar: frozenset[int]
    quadruples: tuple[tuple[int, int, int, int], ...]
    dropped: tuple[tuple[int, int, int, int], ...]
    labels: dict[int, str] = field(repr=False)

    @property
    def bit_count(self) -> int:
        return len(self.quadruples)

    def partner_of(self, a: int) -> int:
        """The partner-block vertex matched to A vertex *a*."""
        return self.partner_vertices[a]


def diamond_cut_size(n: int) -> int:
    """Block bijections plus the matching: n^{3/2} + n edges."""
    r = math.isqrt(n)
    if r * r != n:
        raise ValueError("n must be a perfect square")
    return r * n + n


def build_diamond_fixture(n: int, seed: int) -> DiamondFixture:
    """Sample the scaffold and derive the candidate slots.

    Deterministic in (n, seed): block bijections are drawn in block
    order, then the half A* is drawn, from a single seeded generator.
    """
    r = math.isqrt(n)
    if r * r != n or n < 4:
        raise ValueError("n must be a perfect square >= 4")
    rng = random.Random(seed)

    a = list(range(0, n))
    b = list(range(n, 2 * n))
    partner = list(range(2 * n, 3 * n))
    a_blocks = tuple(tuple(a[i * r : (i + 1) * r]) for i in range(r))
    b_blocks = tuple(tuple(b[i * r : (i + 1) * r]) for i in range(r))

    labels: dict[int, str] = {}
    for i in range(r):
        for j in range(r):
            labels[a_blocks[i][j]] = f"a_{i + 1}_{j + 1}"
            labels[b_blocks[i][j]] = f"b_{i + 1}_{j + 1}"
    for t in range(n):
        labels[partner[t]] = f"p_{t + 1}"

    edges: list[tuple[int, int]] = []
    for t in range(n):
        edges.append((a[t], partner[t]))
    for i in range(r):
        for j in range(r):
            perm = list(range(r))
            rng.shuffle(perm)
            for t in range(r):
                edges.append((a_blocks[i][t], b_blocks[j][perm[t]]))
    g = Graph(3 * n, edges)

    good: list[tuple[int, int]] = []
    for i in range(r):
        for i2 in range(i + 1, r):
            for u in a_blocks[i]:
                nu = g.adj[u]
                for v in a_blocks[i2]:
                    if len(nu & g.adj[v]) == 1:
                        good.append((u, v) if u < v else (v, u))
    good.sort()

    astar = frozenset(rng.sample(range(n), n // 2))

    quadruples: list[tuple[int, int, int, int]] = []
    dropped: list[tuple[int, int, int, int]] = []
    seen_b_pairs: set[tuple[int, int]] = set()
    for u, v in good:
        if (u in astar) == (v in astar):
            continue
        a1, a2 = (u, v) if u in astar else (v, u)
        (b1,) = g.adj[u] & g.adj[v]
        b2 = partner[a1]
        quad = (a1, a2, b1, b2)
        if (b1, b2) in seen_b_pairs:
            dropped.append(quad)
            continue
        seen_b_pairs.add((b1, b2))
        quadruples.append(quad)
    quadruples.sort()

    return DiamondFixture(
        n=n,
        seed=seed,
        block_size=r,
        graph=g,
        a_vertices=tuple(a),
        b_vertices=tuple(b),
        partner_vertices=tuple(partner),
        a_blocks=a_blocks,
        b_blocks=b_blocks,
        good_pairs=tuple(good),
        astar=astar,
        quadruples=tuple(quadruples),
        dropped=tuple(dropped),
        labels=labels,
    )


def good_pair_ratio(fixture: DiamondFixture) -> float:
    """Good pairs per n^2.  Concentrates near (1 - 1/sqrt(n))^{sqrt(n) - 1}
    times the cross-block pair fraction, so it stays bounded away from 0."""
    return len(fixture.good_pairs) / fixture.n**2


def find_fixture_seed(n: int, start_seed: int = 0, min_ratio: float = 0.01) -> int:
    """First seed at or after start_seed whose fixture has enough slots."""
    seed = start_seed
    while True:
        fx = build_diamond_fixture(n, seed)
        if good_pair_ratio(fx) >= min_ratio and fx.bit_count > 0:
            return seed
        seed += 1


def build_diamond_family(fixture: DiamondFixture, pair: InputPair) -> FamilyInstance:
    """Add the input-driven edges to the fixture and package the instance."""
    if pair.length != fixture.bit_count:
        raise ValueError(
            f"pair has {pair.length} bits, fixture has {fixture.bit_count} slots"
        )
    edges = list(fixture.graph.edges)
    for k, (a1, a2, b1, b2) in enumerate(fixture.quadruples):
        if pair.x[k] == "1":
            edges.append((a1, a2))
        if pair.y[k] == "1":
            edges.append((b1, b2))
    g = Graph(fixture.graph.n, edges)
    side_a = fixture.a_vertices
    side_b = fixture.b_vertices + fixture.partner_vertices
    inst = FamilyInstance(
        family="diamond",
        params={"n": fixture.n, "seed": fixture.seed},
        pair=pair,
        graph=g,
        side_a=side_a,
        side_b=tuple(sorted(side_b)),
        cut_edges=crossing_edges(g, side_a),
        labels=dict(fixture.labels),
        blocks={
            "a": fixture.a_vertices,
            "b": fixture.b_vertices,
            "partner": fixture.partner_vertices,
        },
        meta={
            "quadruples": [list(q) for q in fixture.quadruples],
            "astar": sorted(fixture.astar),
            "good_pair_count": len(fixture.good_pairs),
            "dropped_count": len(fixture.dropped),
        },
    )
    assert inst.cut_size == diamond_cut_size(fixture.n)
    return inst


def list_two_two_diamonds(
    inst: FamilyInstance, budget: int = DEFAULT_WORK_BUDGET
) -> list[tuple[int, ...]]:
    """Induced diamonds with exactly two vertices on each side."""
    side_a = set(inst.side_a)
    return [
        d
        for d in list_induced_diamonds(inst.graph, budget=budget)
        if sum(1 for v in d if v in side_a) == 2
    ]


def has_two_two_diamond(
    inst: FamilyInstance, budget: int = DEFAULT_WORK_BUDGET
) -> bool:
    return bool(list_two_two_diamonds(inst, budget=budget))
