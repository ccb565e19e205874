"""Two-party listing protocols over a vertex partition, with transcripts.

One party owns side A of a vertex split, the other side B; both see
the cut edges, the vertex count, and nothing else about the far side.
The protocols here exchange structured edge batches, then each party
lists its share of the target subgraphs from its own view plus the
decoded bits alone.  Listers are module-level pure functions of
(view, received edges) so tests can substitute a counterfeit far side
and confirm nothing else leaks in.

Payloads are real encoded bit strings.  Per-message framing (a kind
tag and a count word) is accounted separately from payload so bound
checks compare like with like.

The reduction entry point reruns a simulated distributed algorithm on
a two-sided instance and recasts its cut traffic as such a transcript:
if the algorithm decides the target predicate, the transcript decides
set intersection, with exactly the measured cut bits plus one answer
bit.  The bound report turns that equivalence into the arithmetic
ceiling it implies for this proof technique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bitstrings import bits_intersect
from .congest import (
    NodeProgram,
    RunStats,
    SimConfig,
    encode_uint,
    run,
    word_bits,
)
from .families import FamilyInstance
from .graphs import (
    DEFAULT_WORK_BUDGET,
    Graph,
    crossing_edges,
    list_induced_cycles,
    list_induced_diamonds,
)

__all__ = [
    "CycleListingResult",
    "DiamondListingResult",
    "Message",
    "PartyView",
    "ReductionResult",
    "Transcript",
    "ceil_sqrt",
    "congest_reduction",
    "cycle_listing_protocol",
    "diamond_listing_protocol",
    "limitation_bound_report",
    "make_views",
]

FRAME_KIND_BITS = 2


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


@dataclass(frozen=True)
class PartyView:
    """Everything one party can see: its side, its internal edges, the cut."""

    side: str
    n: int
    own_vertices: frozenset[int]
    internal_edges: frozenset[tuple[int, int]]
    cut_edges: frozenset[tuple[int, int]]

    def cut_degree(self, v: int) -> int:
        return sum(1 for e in self.cut_edges if v in e)

    def cut_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(e[0] if e[1] == v else e[1] for e in self.cut_edges if v in e)


def make_views(g: Graph, side_a) -> tuple[PartyView, PartyView]:
    sa = frozenset(side_a)
    sb = frozenset(g.vertices()) - sa
    cut = crossing_edges(g, sa)
    internal_a = frozenset(e for e in g.edges if e[0] in sa and e[1] in sa)
    internal_b = frozenset(e for e in g.edges if e[0] in sb and e[1] in sb)
    return (
        PartyView("a", g.n, sa, internal_a, cut),
        PartyView("b", g.n, sb, internal_b, cut),
    )


@dataclass(frozen=True)
class Message:
    direction: str  # "a->b" or "b->a"
    kind: str
    bits: str


@dataclass
class Transcript:
    word_bits: int
    messages: list[Message] = field(default_factory=list)

    def add(self, direction: str, kind: str, bits: str) -> None:
        if direction not in ("a->b", "b->a"):
            raise ValueError(f"bad direction {direction!r}")
        self.messages.append(Message(direction, kind, bits))

    def payload_bits(self, direction: str | None = None, kind: str | None = None) -> int:
        return sum(
            len(m.bits)
            for m in self.messages
            if (direction is None or m.direction == direction)
            and (kind is None or m.kind == kind)
        )

    def framing_bits(self) -> int:
        return (FRAME_KIND_BITS + 2 * self.word_bits) * len(self.messages)


def encode_edge_list(edges, w: int) -> str:
    return "".join(encode_uint(u, w) + encode_uint(v, w) for u, v in sorted(edges))


def decode_edge_list(bits: str, w: int) -> frozenset[tuple[int, int]]:
    if len(bits) % (2 * w) != 0:
        raise ValueError("edge list bits not a multiple of two words")
    out = set()
    for i in range(0, len(bits), 2 * w):
        u = int(bits[i : i + w], 2)
        v = int(bits[i + w : i + 2 * w], 2)
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


def encode_vertex_list(vertices, w: int) -> str:
    return "".join(encode_uint(v, w) for v in sorted(vertices))


def decode_vertex_list(bits: str, w: int) -> frozenset[int]:
    if len(bits) % w != 0:
        raise ValueError("vertex list bits not a multiple of the word size")
    return frozenset(int(bits[i : i + w], 2) for i in range(0, len(bits), w))


# ---------------------------------------------------------------------------
# Short induced cycles (3 <= k <= 7): one structured batch each way.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleListingResult:
    k: int
    a_list: tuple[tuple[int, ...], ...]
    b_list: tuple[tuple[int, ...], ...]
    transcript: Transcript
    bound_bits: int

    @property
    def within_bound(self) -> bool:
        return self.transcript.payload_bits() <= self.bound_bits

    @property
    def all_listed(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(set(self.a_list) | set(self.b_list)))


def _cut_touching(view: PartyView) -> frozenset[int]:
    return frozenset(v for e in view.cut_edges for v in e if v in view.own_vertices)


def _edges_near_cut(view: PartyView) -> frozenset[tuple[int, int]]:
    touching = _cut_touching(view)
    return frozenset(
        e for e in view.internal_edges if e[0] in touching or e[1] in touching
    )


def _list_cycles_side(
    view: PartyView,
    received: frozenset[tuple[int, int]],
    k: int,
    budget: int,
) -> tuple[tuple[int, ...], ...]:
    """List induced k-cycles this party is responsible for.

    Side A takes candidates with at least ceil(k/2) own vertices, side
    B those with a strict majority, so every cycle is listed exactly
    once.  With k <= 7 a majority-side candidate carries at most one
    far-side vertex that touches no cut edge, and the received batch
    pins every remaining pair status, presence and absence alike.
    """
    known = Graph(view.n, view.internal_edges | view.cut_edges | received)
    need = math.ceil(k / 2) if view.side == "a" else k // 2 + 1
    out = []
    for cyc in list_induced_cycles(known, k, budget=budget):
        own = sum(1 for v in cyc if v in view.own_vertices)
        if own >= need:
            out.append(cyc)
    return tuple(out)


def cycle_listing_protocol(
    g: Graph, side_a, k: int, budget: int = DEFAULT_WORK_BUDGET
) -> CycleListingResult:
    """Joint induced k-cycle listing, 3 <= k <= 7.

    Each party ships its internal edges that touch a cut endpoint; with
    an empty cut nothing is sent and listing is purely local.  Payload
    is at most 4 * w * n * |cut| bits in total.
    """
    if not 3 <= k <= 7:
        raise ValueError("cycle protocol supports 3 <= k <= 7")
    view_a, view_b = make_views(g, side_a)
    w = word_bits(g.n)
    transcript = Transcript(word_bits=w)
    if view_a.cut_edges:
        batch_b = _edges_near_cut(view_b)
        transcript.add("b->a", "internal-near-cut", encode_edge_list(batch_b, w))
        batch_a = _edges_near_cut(view_a)
        transcript.add("a->b", "internal-near-cut", encode_edge_list(batch_a, w))
        received_a = decode_edge_list(transcript.messages[0].bits, w)
        received_b = decode_edge_list(transcript.messages[1].bits, w)
    else:
        received_a = received_b = frozenset()
    a_list = _list_cycles_side(view_a, received_a, k, budget)
    b_list = _list_cycles_side(view_b, received_b, k, budget)
    return CycleListingResult(
        k=k,
        a_list=a_list,
        b_list=b_list,
        transcript=transcript,
        bound_bits=4 * w * g.n * len(view_a.cut_edges),
    )


# ---------------------------------------------------------------------------
# Induced diamonds: degree-split protocol with sublinear payload per cut edge.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiamondListingResult:
    a_list: tuple[tuple[int, ...], ...]
    b_list: tuple[tuple[int, ...], ...]
    transcript: Transcript
    bound_bits: int
    dense_cut_fallback: bool
    heavy: frozenset[int]

    @property
    def within_bound(self) -> bool:
        return self.transcript.payload_bits() <= self.bound_bits

    @property
    def all_listed(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(set(self.a_list) | set(self.b_list)))


def _internal_degree(view: PartyView) -> dict[int, int]:
    deg = {v: 0 for v in view.own_vertices}
    for u, v in view.internal_edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def _heavy_vertices(view: PartyView) -> frozenset[int]:
    """Own-side vertices whose cut degree beats internal degree / sqrt(n).

    Integer-exact comparison: n * cut_deg^2 > internal_deg^2.  A vertex
    with no cut edge is never heavy.
    """
    internal = _internal_degree(view)
    return frozenset(
        v
        for v in _cut_touching(view)
        if view.n * view.cut_degree(v) ** 2 > internal[v] ** 2
    )


def _count_present(pairs, present: set[tuple[int, int]]) -> int:
    return sum(1 for p in pairs if p in present)


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _diamond_list_a(
    view: PartyView,
    window_edges: frozenset[tuple[int, int]],
    heavy: frozenset[int],
    budget: int,
) -> tuple[tuple[int, ...], ...]:
    """Side A's share: all diamonds with >= 3 A vertices, plus the balanced
    ones whose two A vertices are both light.

    For a balanced diamond with both A vertices light, some A vertex of
    it sees both far vertices across the cut (at most one of the six
    pairs is missing), so the far pair lies inside that vertex's window
    and its status arrived in the window batch.
    """
    known = Graph(view.n, view.internal_edges | view.cut_edges)
    local = [
        d
        for d in list_induced_diamonds(known, budget=budget)
        if sum(1 for v in d if v in view.own_vertices) >= 3
    ]
    present = set(view.internal_edges) | set(view.cut_edges) | set(window_edges)
    found: set[tuple[int, ...]] = set(local)
    for v in sorted(_cut_touching(view) - heavy):
        wnb = sorted(view.cut_neighbors(v))
        for i in range(len(wnb)):
            for j in range(i + 1, len(wnb)):
                b1, b2 = wnb[i], wnb[j]
                partners = set()
                for b in (b1, b2):
                    partners |= {
                        e[0] if e[1] == b else e[1]
                        for e in view.cut_edges
                        if b in e
                    }
                for q in sorted(partners - {v}):
                    if q in heavy or q not in view.own_vertices:
                        continue
                    pairs = [
                        _norm(v, q),
                        _norm(v, b1),
                        _norm(v, b2),
                        _norm(q, b1),
                        _norm(q, b2),
                        _norm(b1, b2),
                    ]
                    if _count_present(pairs, present) == 5:
                        found.add(tuple(sorted((v, q, b1, b2))))
    return tuple(sorted(found))


def _diamond_list_b(
    view: PartyView,
    heavy: frozenset[int],
    heavy_edges: frozenset[tuple[int, int]],
    budget: int,
) -> tuple[tuple[int, ...], ...]:
    """Side B's share: all diamonds with >= 3 B vertices, plus the balanced
    ones with at least one heavy A vertex (their A-pair status is pinned
    by the heavy-incident batch)."""
    known = Graph(view.n, view.internal_edges | view.cut_edges)
    local = [
        d
        for d in list_induced_diamonds(known, budget=budget)
        if sum(1 for v in d if v in view.own_vertices) >= 3
    ]
    present = set(view.internal_edges) | set(view.cut_edges) | set(heavy_edges)
    far_cut_touching = frozenset(
        v for e in view.cut_edges for v in e if v not in view.own_vertices
    )
    found: set[tuple[int, ...]] = set(local)
    for u in sorted(far_cut_touching):
        bnb = sorted(view.cut_neighbors(u))
        for i in range(len(bnb)):
            for j in range(i + 1, len(bnb)):
                b1, b2 = bnb[i], bnb[j]
                partners = set()
                for b in (b1, b2):
                    partners |= {
                        e[0] if e[1] == b else e[1]
                        for e in view.cut_edges
                        if b in e
                    }
                for q in sorted(partners - {u}):
                    if q in view.own_vertices:
                        continue
                    if u not in heavy and q not in heavy:
                        continue
                    pairs = [
                        _norm(u, q),
                        _norm(u, b1),
                        _norm(u, b2),
                        _norm(q, b1),
                        _norm(q, b2),
                        _norm(b1, b2),
                    ]
                    if _count_present(pairs, present) == 5:
                        found.add(tuple(sorted((u, q, b1, b2))))
    return tuple(sorted(found))


def diamond_listing_protocol(
    g: Graph, side_a, budget: int = DEFAULT_WORK_BUDGET
) -> DiamondListingResult:
    """Joint induced diamond listing with payload <= 12 * w * sqrt(n) * |cut|.

    A vertex of side A is heavy when its cut degree exceeds its internal
    degree divided by sqrt(n).  Side A ships the heavy ids and every
    internal edge touching a heavy vertex; side B ships, for each light
    cut endpoint of A, the internal pair statuses inside that vertex's
    cut neighborhood (as one deduplicated edge batch).  Heavy vertices
    shed few internal edges by definition, light windows are small by
    definition, so both batches are sqrt(n)-per-cut-edge sized.  When
    the cut is so large that |cut|^2 >= n^3, side A ships all its
    internal edges instead and side B lists everything.
    """
    view_a, view_b = make_views(g, side_a)
    n = g.n
    w = word_bits(n)
    transcript = Transcript(word_bits=w)
    cut = view_a.cut_edges
    bound = 12 * w * ceil_sqrt(n) * len(cut)

    if len(cut) ** 2 >= n**3:
        transcript.add(
            "a->b", "all-internal", encode_edge_list(view_a.internal_edges, w)
        )
        received = decode_edge_list(transcript.messages[0].bits, w)
        full = Graph(n, view_b.internal_edges | view_b.cut_edges | received)
        b_list = tuple(sorted(list_induced_diamonds(full, budget=budget)))
        return DiamondListingResult(
            a_list=(),
            b_list=b_list,
            transcript=transcript,
            bound_bits=bound,
            dense_cut_fallback=True,
            heavy=frozenset(),
        )

    heavy = _heavy_vertices(view_a)
    if cut:
        transcript.add("a->b", "heavy-ids", encode_vertex_list(heavy, w))
        heavy_edges = frozenset(
            e for e in view_a.internal_edges if e[0] in heavy or e[1] in heavy
        )
        transcript.add("a->b", "internal-near-heavy", encode_edge_list(heavy_edges, w))
        recv_heavy = decode_vertex_list(transcript.messages[0].bits, w)
        # Side B derives the light windows from shared knowledge alone:
        # far-side cut endpoints minus the received heavy ids.
        far_touching = frozenset(
            v for e in view_b.cut_edges for v in e if v not in view_b.own_vertices
        )
        windows: set[tuple[int, int]] = set()
        for v in sorted(far_touching - recv_heavy):
            window = sorted(view_b.cut_neighbors(v))
            for i in range(len(window)):
                for j in range(i + 1, len(window)):
                    e = _norm(window[i], window[j])
                    if e in view_b.internal_edges:
                        windows.add(e)
        transcript.add("b->a", "light-windows", encode_edge_list(windows, w))
        recv_heavy_edges = decode_edge_list(transcript.messages[1].bits, w)
        recv_windows = decode_edge_list(transcript.messages[2].bits, w)
    else:
        recv_heavy = frozenset()
        recv_heavy_edges = frozenset()
        recv_windows = frozenset()

    a_list = _diamond_list_a(view_a, recv_windows, heavy, budget)
    b_list = _diamond_list_b(view_b, recv_heavy, recv_heavy_edges, budget)
    return DiamondListingResult(
        a_list=a_list,
        b_list=b_list,
        transcript=transcript,
        bound_bits=bound,
        dense_cut_fallback=False,
        heavy=heavy,
    )


# ---------------------------------------------------------------------------
# Simulated-run-to-transcript reduction and the ceiling it implies.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionResult:
    disjointness_answer: int
    oracle_answer: int
    consistent: bool
    program_decision: int
    stats: RunStats
    transcript: Transcript

    @property
    def answer_overhead_bits(self) -> int:
        return self.transcript.payload_bits(kind="answer")


def congest_reduction(
    inst: FamilyInstance,
    program: NodeProgram,
    config: SimConfig = SimConfig(),
) -> ReductionResult:
    """Run *program* on a two-sided instance and express the run as a
    two-party protocol for set disjointness.

    Every simulated message crossing the cut becomes a transcript
    message with its exact payload, plus a single 1-bit answer at the
    end; the parties could have produced the same transcript by each
    simulating their own side.  The program answers "target present";
    the family makes that equivalent to "inputs intersect", so the
    transcript decides disjointness: answer 1 means disjoint.
    """
    stats = run(
        inst.graph,
        program,
        config=config,
        cut=inst.cut_edges,
        record_cut_messages=True,
    )
    if stats.decision is None:
        raise RuntimeError(f"program {program.name} did not decide within the cap")
    side_a = set(inst.side_a)
    transcript = Transcript(word_bits=word_bits(inst.graph.n))
    for _, src, _dst, bits in stats.cut_messages:
        transcript.add("a->b" if src in side_a else "b->a", "sim", bits)
    transcript.add("b->a", "answer", str(stats.decision))
    assert transcript.payload_bits(kind="sim") == stats.total_cut_bits
    disj = 0 if stats.decision == 1 else 1
    oracle = 0 if bits_intersect(inst.pair.x, inst.pair.y) else 1
    return ReductionResult(
        disjointness_answer=disj,
        oracle_answer=oracle,
        consistent=disj == oracle,
        program_decision=stats.decision,
        stats=stats,
        transcript=transcript,
    )


def limitation_bound_report(n: int, cut_size: int, kind: str) -> dict:
    """Arithmetic ceiling of the cut-charging argument for one family.

    The listing protocols above cap the disjointness cost extractable
    from a cut at payload_ceiling bits.  A simulated round moves at
    most one bandwidth unit per cut edge per direction, so no round
    lower bound proved by charging this cut can exceed the ceiling
    divided by the per-round cut capacity in words.  This reports the
    technique's reach, not the problem's difficulty.
    """
    w = word_bits(n)
    if kind == "cycle":
        payload_ceiling = 4 * w * n * cut_size
    elif kind == "diamond":
        payload_ceiling = 12 * w * ceil_sqrt(n) * cut_size
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return {
        "kind": kind,
        "n": n,
        "cut_size": cut_size,
        "word_bits": w,
        "payload_ceiling_bits": payload_ceiling,
        "round_ceiling": (
            payload_ceiling / (cut_size * w) if cut_size else math.inf
        ),
        "note": (
            "ceiling on what cut-charging can certify for this family; "
            "a protocol with this payload exists"
        ),
    }
