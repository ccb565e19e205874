"""Two-input graph families whose target cycle encodes set intersection.

Each builder takes a pair of bit strings (x, y) and produces a graph
split into two vertex sides.  The vertex set, the side split, and the
cut between the sides never depend on the inputs; edges internal to
side A depend only on x, edges internal to side B only on y.  The
families are engineered so that the graph contains an induced cycle of
the target length exactly when x and y share a 1.  These are the
instances that make distributed cycle detection pay for the cut: any
correct run must move enough information across it to decide
intersection.

Three builders live here.  ``build_four_cycle_family`` targets the
4-cycle with a cut of 2n matching edges.  ``build_cycle_family``
targets any length k >= 4 by subdividing those matchings.
``build_long_cycle_family`` targets long cycles while keeping the cut
small: side-internal block indices are encoded as fixed-size subsets
of a shared symbol alphabet, and only the alphabet (not the block
count) crosses the cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .bitstrings import pair_index, validate_bits
from .graphs import Graph, crossing_edges

__all__ = [
    "CodeAssignment",
    "FamilyInstance",
    "InputPair",
    "build_cycle_family",
    "build_four_cycle_family",
    "build_long_cycle_family",
    "colex_subset",
    "colex_rank",
    "cycle_cut_size",
    "long_cycle_alphabet",
    "long_cycle_cut_size",
    "make_code_assignment",
]


@dataclass(frozen=True)
class InputPair:
    """The two equal-length bit strings that drive a family instance."""

    x: str
    y: str

    def __post_init__(self) -> None:
        validate_bits(self.x)
        validate_bits(self.y, length=len(self.x))

    @property
    def length(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class FamilyInstance:
    """A built two-sided graph plus the bookkeeping the harness needs.

    ``side_a`` and ``side_b`` partition the vertices; internal edges of
    side A are a function of x alone, side B of y alone.  ``cut_edges``
    is derived from the split and checked against the family's closed
    form by the builder.  ``labels`` names every vertex for debugging
    and bundle output; ``blocks`` groups vertex ids by structural role;
    ``meta`` carries family-specific structure (code assignments, path
    internals, quadruples) and is JSON-serializable.
    """

    family: str
    params: dict
    pair: InputPair
    graph: Graph
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    cut_edges: frozenset[tuple[int, int]]
    labels: dict[int, str] = field(repr=False)
    blocks: dict[str, tuple[int, ...]] = field(repr=False)
    meta: dict = field(repr=False)

    def __post_init__(self) -> None:
        sa, sb = set(self.side_a), set(self.side_b)
        if sa & sb or len(sa) + len(sb) != self.graph.n:
            raise ValueError("sides must partition the vertex set")
        if self.cut_edges != crossing_edges(self.graph, sa):
            raise ValueError("cut_edges disagrees with the side split")

    @property
    def cut_size(self) -> int:
        return len(self.cut_edges)


def _instance(
    family: str,
    params: dict,
    pair: InputPair,
    n_vertices: int,
    edges: list[tuple[int, int]],
    side_a: Sequence[int],
    side_b: Sequence[int],
    labels: dict[int, str],
    blocks: dict[str, tuple[int, ...]],
    meta: dict,
) -> FamilyInstance:
    g = Graph(n_vertices, edges)
    return FamilyInstance(
        family=family,
        params=params,
        pair=pair,
        graph=g,
        side_a=tuple(sorted(side_a)),
        side_b=tuple(sorted(side_b)),
        cut_edges=crossing_edges(g, side_a),
        labels=labels,
        blocks=blocks,
        meta=meta,
    )


# ---------------------------------------------------------------------------
# Cycle family: four blocks of n, matchings across the cut, cliques on the
# outer blocks, one candidate connector edge per input bit on each side.
# ---------------------------------------------------------------------------


def cycle_cut_size(n: int) -> int:
    """Cut size of the (subdivided) cycle family: two matchings of n."""
    return 2 * n


def build_four_cycle_family(n: int, pair: InputPair) -> FamilyInstance:
    """Target: induced 4-cycle present iff x and y intersect.

    Layout: blocks a1, a2 on side A and b1, b2 on side B, each of size
    n.  a1 and b2 are cliques, a2 and b1 independent sets.  Matchings
    (a1_i, b1_i) and (a2_i, b2_i) form the cut.  Bit (i, j) of x adds
    the connector (a1_i, a2_j); the same bit of y adds (b1_i, b2_j).
    A shared 1 at (i, j) closes a1_i - a2_j - b2_j - b1_i into an
    induced 4-cycle; the cliques and matchings admit no other one.
    """
    return build_cycle_family(n, 4, pair)


def build_cycle_family(n: int, k: int, pair: InputPair) -> FamilyInstance:
    """Target: induced k-cycle present iff x and y intersect, any k >= 4.

    For k > 4 the two matchings of the 4-cycle layout are subdivided:
    each (a1_i, b1_i) edge becomes a path with ceil((k-4)/2) internal
    vertices, each (a2_i, b2_i) edge one with floor((k-4)/2).  Internal
    vertices nearer the A end belong to side A, so every path still
    crosses the cut exactly once and the cut stays at 2n edges.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if k < 4:
        raise ValueError("this family needs k >= 4")
    if pair.length != n * n:
        raise ValueError(f"pair has {pair.length} bits, family needs {n * n}")

    t_upper = math.ceil((k - 4) / 2)
    t_lower = (k - 4) // 2

    a1 = list(range(0, n))
    a2 = list(range(n, 2 * n))
    b1 = list(range(2 * n, 3 * n))
    b2 = list(range(3 * n, 4 * n))
    labels = {}
    for i in range(1, n + 1):
        labels[a1[i - 1]] = f"a1_{i}"
        labels[a2[i - 1]] = f"a2_{i}"
        labels[b1[i - 1]] = f"b1_{i}"
        labels[b2[i - 1]] = f"b2_{i}"

    next_id = 4 * n
    upper_internals: list[list[int]] = []
    for i in range(1, n + 1):
        ids = list(range(next_id, next_id + t_upper))
        next_id += t_upper
        upper_internals.append(ids)
        for s, v in enumerate(ids, start=1):
            labels[v] = f"a1b1_{i}_{s}"
    lower_internals: list[list[int]] = []
    for i in range(1, n + 1):
        ids = list(range(next_id, next_id + t_lower))
        next_id += t_lower
        lower_internals.append(ids)
        for s, v in enumerate(ids, start=1):
            labels[v] = f"a2b2_{i}_{s}"

    edges: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            edges.append((a1[i], a1[j]))
            edges.append((b2[i], b2[j]))
    for i in range(n):
        chain_u = [a1[i], *upper_internals[i], b1[i]]
        edges.extend(zip(chain_u, chain_u[1:]))
        chain_l = [a2[i], *lower_internals[i], b2[i]]
        edges.extend(zip(chain_l, chain_l[1:]))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if pair.x[pair_index(i, j, n)] == "1":
                edges.append((a1[i - 1], a2[j - 1]))
            if pair.y[pair_index(i, j, n)] == "1":
                edges.append((b1[i - 1], b2[j - 1]))

    side_a = set(a1) | set(a2)
    side_b = set(b1) | set(b2)
    for ids in upper_internals:
        head = math.ceil(len(ids) / 2)
        side_a.update(ids[:head])
        side_b.update(ids[head:])
    for ids in lower_internals:
        head = math.ceil(len(ids) / 2)
        side_a.update(ids[:head])
        side_b.update(ids[head:])

    inst = _instance(
        family="cycle",
        params={"n": n, "k": k},
        pair=pair,
        n_vertices=next_id,
        edges=edges,
        side_a=side_a,
        side_b=side_b,
        labels=labels,
        blocks={
            "a1": tuple(a1),
            "a2": tuple(a2),
            "b1": tuple(b1),
            "b2": tuple(b2),
        },
        meta={
            "target_length": k,
            "path_internals": {
                "a1b1": upper_internals,
                "a2b2": lower_internals,
            },
        },
    )
    assert inst.cut_size == cycle_cut_size(n)
    return inst


# ---------------------------------------------------------------------------
# Long-cycle family: block indices are encoded as fixed-size subsets of a
# small symbol alphabet, so the cut scales with the alphabet, not with n.
# ---------------------------------------------------------------------------


def colex_subset(rank: int, ell: int) -> tuple[int, ...]:
    """The ell-subset of the nonnegative integers at *rank* in colex order.

    Colex compares subsets by largest element first.  Unranking is the
    standard greedy walk: the largest element is the biggest c with
    comb(c, ell) <= rank, and the remainder recurses.
    """
    if ell < 0 or rank < 0:
        raise ValueError("rank and ell must be nonnegative")
    out: list[int] = []
    r = rank
    for i in range(ell, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= r:
            c += 1
        out.append(c)
        r -= math.comb(c, i)
    return tuple(reversed(out))


def colex_rank(subset: Sequence[int]) -> int:
    """Inverse of colex_subset; accepts the subset in any order."""
    elems = sorted(subset)
    if len(set(elems)) != len(elems) or (elems and elems[0] < 0):
        raise ValueError(f"not a subset of nonnegative integers: {subset!r}")
    return sum(math.comb(c, i) for i, c in enumerate(elems, start=1))


def long_cycle_alphabet(n: int, ell: int) -> int:
    """Smallest symbol count r with r**ell >= ell**ell * n.

    Computed in exact integer arithmetic; a float root here can
    misround at perfect powers.
    """
    if n < 1 or ell < 1:
        raise ValueError("need n >= 1 and ell >= 1")
    target = ell**ell * n
    r = max(1, round(target ** (1.0 / ell)))
    while r > 1 and (r - 1) ** ell >= target:
        r -= 1
    while r**ell < target:
        r += 1
    return r


@dataclass(frozen=True)
class CodeAssignment:
    """Injective map from block indices 1..n to ell-subsets of the alphabet."""

    n: int
    ell: int
    alphabet: int
    codes: tuple[tuple[int, ...], ...]

    def code(self, i: int) -> tuple[int, ...]:
        """Sorted code subset of 1-based block index i."""
        return self.codes[i - 1]


def make_code_assignment(n: int, ell: int) -> CodeAssignment:
    """Assign block index i the colex-rank-(i-1) ell-subset of the alphabet.

    The alphabet size makes comb(alphabet, ell) >= n, so the first n
    colex subsets exist and stay within range.
    """
    alphabet = long_cycle_alphabet(n, ell)
    if math.comb(alphabet, ell) < n:
        raise AssertionError(
            f"alphabet {alphabet} too small for {n} codes of size {ell}"
        )
    codes = tuple(colex_subset(i, ell) for i in range(n))
    assert all(c[-1] < alphabet for c in codes)
    return CodeAssignment(n=n, ell=ell, alphabet=alphabet, codes=codes)


def long_cycle_cut_size(
    n: int, ell: int, m: int = 0, include_centers: bool = True
) -> int:
    """Cut size of the long-cycle family: two code matchings plus the
    center edge when centers are built.  Padding subdivides matching
    edges without adding crossings, so m does not appear in the count."""
    return 2 * long_cycle_alphabet(n, ell) + (1 if include_centers else 0)


def build_long_cycle_family(
    n: int, ell: int, m: int, pair: InputPair, include_centers: bool = True
) -> FamilyInstance:
    """Target: induced cycle of length ell * (8 + m) iff x and y intersect.

    Layout: blocks a1, a2, b1, b2 each hold n sub-blocks of ell
    vertices.  Sub-block i is wired to the code vertices of its
    ell-subset code: vertex j of the sub-block attaches to the j-th
    smallest symbol.  a1 and b1 sub-blocks use the upper code blocks,
    a2 and b2 the lower ones, and upper/lower code blocks are matched
    across the cut symbol by symbol.  Distinct sub-blocks of the same
    block are completely joined (for a2 and b1 only when ell >= 2),
    which pins any long induced cycle to one sub-block per block.

    Bit (i, j) of x glues a1 sub-block i to a2 sub-block j with a
    rotated matching, (a1_{i,t+1}, a2_{j,t}) wrapping around; bit
    (i, j) of y glues b1 sub-block i to b2 sub-block j straight.  The
    rotation chains the ell strands through all code vertices of both
    sub-block codes into a single cycle of length 8*ell.

    With include_centers, two center vertices (one per side, joined to
    everything on their side and to each other) pin the diameter at 3.
    Centers leave the target predicate intact only for ell >= 2; at
    ell = 1 they create stray induced 8-cycles on some disjoint pairs,
    so predicate checks should build without them.  When m > 0 every
    upper code matching edge is subdivided with floor(m/2) internal
    vertices and every lower one with ceil(m/2), stretching each of
    the ell strands by m.  The cut is two code matchings, plus the
    center edge when present, regardless of m.
    """
    if n < 1 or ell < 1 or m < 0:
        raise ValueError("need n >= 1, ell >= 1, m >= 0")
    if pair.length != n * n:
        raise ValueError(f"pair has {pair.length} bits, family needs {n * n}")

    code = make_code_assignment(n, ell)
    r = code.alphabet

    def sub_block(base: int, i: int) -> list[int]:
        return [base + (i - 1) * ell + (j - 1) for j in range(1, ell + 1)]

    base_a1, base_a2 = 0, n * ell
    base_b1, base_b2 = 2 * n * ell, 3 * n * ell
    base_ua = 4 * n * ell
    base_la = base_ua + r
    base_ub = base_la + r
    base_lb = base_ub + r
    centers: tuple[int, ...] = ()
    if include_centers:
        centers = (base_lb + r, base_lb + r + 1)

    labels: dict[int, str] = {}
    for i in range(1, n + 1):
        for j in range(1, ell + 1):
            labels[sub_block(base_a1, i)[j - 1]] = f"a1_{i}_{j}"
            labels[sub_block(base_a2, i)[j - 1]] = f"a2_{i}_{j}"
            labels[sub_block(base_b1, i)[j - 1]] = f"b1_{i}_{j}"
            labels[sub_block(base_b2, i)[j - 1]] = f"b2_{i}_{j}"
    for t in range(r):
        labels[base_ua + t] = f"ua_{t}"
        labels[base_la + t] = f"la_{t}"
        labels[base_ub + t] = f"ub_{t}"
        labels[base_lb + t] = f"lb_{t}"
    if include_centers:
        labels[centers[0]] = "center_a"
        labels[centers[1]] = "center_b"

    edges: list[tuple[int, int]] = []

    def join_distinct_sub_blocks(base: int) -> None:
        for i in range(1, n + 1):
            for i2 in range(i + 1, n + 1):
                for u in sub_block(base, i):
                    for v in sub_block(base, i2):
                        edges.append((u, v))

    join_distinct_sub_blocks(base_a1)
    join_distinct_sub_blocks(base_b2)
    if ell >= 2:
        join_distinct_sub_blocks(base_a2)
        join_distinct_sub_blocks(base_b1)

    for i in range(1, n + 1):
        sigma = code.code(i)
        for j in range(1, ell + 1):
            t = sigma[j - 1]
            edges.append((sub_block(base_a1, i)[j - 1], base_ua + t))
            edges.append((sub_block(base_a2, i)[j - 1], base_la + t))
            edges.append((sub_block(base_b1, i)[j - 1], base_ub + t))
            edges.append((sub_block(base_b2, i)[j - 1], base_lb + t))

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if pair.x[pair_index(i, j, n)] == "1":
                blk_a1 = sub_block(base_a1, i)
                blk_a2 = sub_block(base_a2, j)
                for t in range(1, ell):
                    edges.append((blk_a1[t], blk_a2[t - 1]))
                edges.append((blk_a1[0], blk_a2[ell - 1]))
            if pair.y[pair_index(i, j, n)] == "1":
                blk_b1 = sub_block(base_b1, i)
                blk_b2 = sub_block(base_b2, j)
                for t in range(ell):
                    edges.append((blk_b1[t], blk_b2[t]))

    side_a = set(range(base_a1, base_a2)) | set(range(base_a2, base_b1))
    side_a |= set(range(base_ua, base_ub))
    side_b = set(range(base_b1, base_ua)) | set(range(base_ub, base_lb + r))

    if include_centers:
        # Centers attach to everything on their own side before padding
        # is appended, so padding internals stay off the centers.
        center_a, center_b = centers
        for v in sorted(side_a):
            edges.append((center_a, v))
        for v in sorted(side_b):
            edges.append((center_b, v))
        edges.append((center_a, center_b))
        side_a.add(center_a)
        side_b.add(center_b)

    pad_upper = m // 2
    pad_lower = (m + 1) // 2
    next_id = base_lb + r + len(centers)

    def matched_pair_chain(u: int, v: int, count: int, tag: str, t: int) -> None:
        nonlocal next_id
        ids = list(range(next_id, next_id + count))
        next_id += count
        for s, w in enumerate(ids, start=1):
            labels[w] = f"{tag}_{t}_{s}"
        head = math.ceil(count / 2)
        side_a.update(ids[:head])
        side_b.update(ids[head:])
        chain = [u, *ids, v]
        edges.extend(zip(chain, chain[1:]))

    for t in range(r):
        matched_pair_chain(base_ua + t, base_ub + t, pad_upper, "upad", t)
    for t in range(r):
        matched_pair_chain(base_la + t, base_lb + t, pad_lower, "lpad", t)

    inst = _instance(
        family="longcycle",
        params={"n": n, "ell": ell, "m": m, "centers": include_centers},
        pair=pair,
        n_vertices=next_id,
        edges=edges,
        side_a=side_a,
        side_b=side_b,
        labels=labels,
        blocks={
            "a1": tuple(range(base_a1, base_a2)),
            "a2": tuple(range(base_a2, base_b1)),
            "b1": tuple(range(base_b1, base_b2)),
            "b2": tuple(range(base_b2, base_ua)),
            "upper_a": tuple(range(base_ua, base_la)),
            "lower_a": tuple(range(base_la, base_ub)),
            "upper_b": tuple(range(base_ub, base_lb)),
            "lower_b": tuple(range(base_lb, base_lb + r)),
            "centers": centers,
        },
        meta={
            "target_length": ell * (8 + m),
            "alphabet": r,
            "codes": [list(c) for c in code.codes],
            "subblocks": {
                "a1": [sub_block(base_a1, i) for i in range(1, n + 1)],
                "a2": [sub_block(base_a2, i) for i in range(1, n + 1)],
                "b1": [sub_block(base_b1, i) for i in range(1, n + 1)],
                "b2": [sub_block(base_b2, i) for i in range(1, n + 1)],
            },
        },
    )
    assert inst.cut_size == long_cycle_cut_size(n, ell, m, include_centers)
    return inst
