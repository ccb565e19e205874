"""Distributed induced-diamond listing over a degree-peeling decomposition.

The graph is split once: vertices are repeatedly peeled while their
residual degree is below a threshold d_min ~ n^delta / c; the edges a
vertex still has when peeled become its assigned sparse edges, and the
components of the surviving graph become clusters.  Two facts drive
everything downstream.  First, an edge is either internal to one
cluster (member edges) or has a peeled endpoint (sparse edges); there
are no member-to-member edges between different clusters, because such
an edge would have survived peeling and merged the components.  Second,
a vertex assigned edges at peel time holds fewer than d_min of them,
so broadcasting assigned sets is cheap.

Listing runs in three phases, each executed on the bandwidth-accounted
simulator where communication actually happens:

* Sparse phase: every node announces its cluster flag and streams its
  assigned sparse edges to its neighbors.  After that exchange each
  node knows every sparse edge incident to itself or to a neighbor,
  which is enough to list, exactly, the diamonds whose five edges are
  all sparse: a wing certifies its own non-edge, a spine vertex
  certifies the non-edge between two of its neighbors unless they are
  co-members of one cluster, in which case both wings succeed instead.

* Heavy phase: a non-member with more than n^epsilon neighbors inside a
  cluster is heavy for it.  Each heavy vertex splits its full neighbor
  list into one chunk per cluster neighbor and streams the chunks in;
  the cluster then has full knowledge of each heavy neighborhood plus
  its members' incident edges, and lists, exactly, the diamonds with a
  member edge and a heavy vertex.  Moving the gathered data inside the
  cluster is not executed; it is charged at the textbook gather cost
  per engaged cluster and reported as such.

* Light phase: non-members with between 1 and n^epsilon neighbors in a
  cluster stream those neighbor lists, then query one cluster endpoint
  per pair of their own cluster neighbors for the pair's status (at
  most n^epsilon - 1 queried pairs per edge, by the light bound, with
  one answer bit each).  A vertex seeing two cluster neighbors lists
  the diamonds whose missing pair is light-to-cluster; a member lists
  those whose missing pair joins two of its light neighbors, using the
  sparse broadcasts to certify that absence.  Diamonds with three or
  more vertices in one cluster are reconciled centrally from member
  knowledge alone (every pair of such a diamond touches a member); no
  messages are charged for that step since the member data already
  sits inside the cluster.

The three phase outputs are provably disjoint and their union is the
full induced-diamond set; coverage_tags computes the expected phase of
every oracle diamond so tests can assert the partition exactly.

All thresholds of the form n^(p/q) are compared in exact integer
arithmetic; floats never decide a classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bundles import canonical_json_bytes
from .congest import (
    NodeProgram,
    RunStats,
    SimConfig,
    decode_uint,
    encode_uint,
    run,
    word_bits,
)
from .graphs import (
    DEFAULT_WORK_BUDGET,
    Graph,
    connected_components,
    list_induced_diamonds,
)

__all__ = [
    "Cluster",
    "Decomposition",
    "DiamondRunStats",
    "cluster_conductance_advisory",
    "coverage_tags",
    "decompose_by_peeling",
    "frac_pow_ceil",
    "frac_pow_floor",
    "heavy_map",
    "light_map",
    "list_induced_diamonds_congest",
    "min_peel_degree",
    "run_heavy_phase",
    "run_light_phase",
    "run_sparse_phase",
]

DEFAULT_DELTA = Fraction(5, 6)
DEFAULT_EPSILON = Fraction(1, 2)
DEFAULT_MIN_DEGREE_CONSTANT = 4


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(
            "pass fractional exponents as Fraction (or str/int); floats would "
            "make threshold comparisons inexact"
        )
    return Fraction(x)


def frac_pow_floor(n: int, exponent: Fraction) -> int:
    """floor(n ** exponent), computed in exact integer arithmetic."""
    exponent = _as_fraction(exponent)
    if n < 0 or exponent < 0:
        raise ValueError("need n >= 0 and exponent >= 0")
    if n == 0:
        return 0
    p, q = exponent.numerator, exponent.denominator
    target = n**p
    lo, hi = 0, n ** ((p + q - 1) // q) + 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**q <= target:
            lo = mid
        else:
            hi = mid - 1
    return lo


def frac_pow_ceil(n: int, exponent: Fraction) -> int:
    exponent = _as_fraction(exponent)
    f = frac_pow_floor(n, exponent)
    p, q = exponent.numerator, exponent.denominator
    return f if n == 0 or f**q == n**p else f + 1


def min_peel_degree(n: int, delta: Fraction, constant: int) -> int:
    """max(2, ceil(n^delta / constant)), exactly."""
    delta = _as_fraction(delta)
    p, q = delta.numerator, delta.denominator
    target = n**p
    d = 0
    lo, hi = 0, n + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if (mid * constant) ** q >= target:
            hi = mid
        else:
            lo = mid + 1
    d = lo
    return max(2, d)


@dataclass
class Cluster:
    index: int
    leader: int
    members: frozenset[int]
    edges: frozenset[tuple[int, int]]


@dataclass
class Decomposition:
    n: int
    delta: Fraction
    min_degree_constant: int
    d_min: int
    peel_order: tuple[int, ...]
    es_assigned: dict[int, tuple[tuple[int, int], ...]]
    clusters: tuple[Cluster, ...]
    cluster_index: dict[int, int | None]

    def es_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for edges in self.es_assigned.values() for e in edges)

    def em_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for c in self.clusters for e in c.edges)

    def is_member(self, v: int) -> bool:
        return self.cluster_index.get(v) is not None

    def leader_of(self, v: int) -> int | None:
        ci = self.cluster_index.get(v)
        return None if ci is None else self.clusters[ci].leader

    def es_cap(self) -> int:
        """Per-vertex assigned-edge cap: n^delta * log2(n), rounded up."""
        return frac_pow_ceil(self.n, self.delta) * max(
            1, math.ceil(math.log2(max(2, self.n)))
        )

    def validate(self, g: Graph) -> list[str]:
        """Structural invariants; returns human-readable violations."""
        out: list[str] = []
        es = self.es_edges()
        em = self.em_edges()
        if es & em:
            out.append(f"{len(es & em)} edges are both sparse and member")
        if es | em != g.edges:
            out.append("sparse+member edges do not cover the graph")
        assigned_total = sum(len(v) for v in self.es_assigned.values())
        if assigned_total != len(es):
            out.append("an edge is assigned to more than one vertex")
        cap = self.es_cap()
        for v, edges in self.es_assigned.items():
            if len(edges) >= self.d_min:
                out.append(f"vertex {v} was assigned {len(edges)} >= d_min edges")
            if len(edges) > cap:
                out.append(f"vertex {v} exceeds the assigned-edge cap")
        seen: set[int] = set()
        for c in self.clusters:
            if c.members & seen:
                out.append(f"cluster {c.index} overlaps another cluster")
            seen |= c.members
            if c.leader != min(c.members):
                out.append(f"cluster {c.index} leader is not the minimum member")
            for v in c.members:
                deg_in = len(g.adj[v] & c.members)
                if deg_in < self.d_min:
                    out.append(
                        f"member {v} has in-cluster degree {deg_in} < {self.d_min}"
                    )
        for u, v in g.edges:
            cu, cv = self.cluster_index.get(u), self.cluster_index.get(v)
            if cu is not None and cv is not None and cu != cv:
                out.append(f"edge ({u},{v}) joins two different clusters")
        if set(self.peel_order) != {
            v for v in range(self.n) if self.cluster_index.get(v) is None
        }:
            out.append("peel order disagrees with cluster membership")
        return out


def decompose_by_peeling(
    g: Graph,
    delta: Fraction = DEFAULT_DELTA,
    min_degree_constant: int = DEFAULT_MIN_DEGREE_CONSTANT,
) -> Decomposition:
    """Peel low-degree vertices, keep surviving components as clusters.

    Deterministic: among peelable vertices the smallest id goes first.
    A peeled vertex is assigned the edges it still had, so every edge
    with a peeled endpoint is assigned exactly once (to the endpoint
    peeled earlier) and edges between survivors stay member edges.
    """
    delta = _as_fraction(delta)
    d_min = min_peel_degree(g.n, delta, min_degree_constant)
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    active = set(range(g.n))
    peel_order: list[int] = []
    es_assigned: dict[int, tuple[tuple[int, int], ...]] = {}
    while True:
        peelable = sorted(v for v in active if len(adj[v]) < d_min)
        if not peelable:
            break
        v = peelable[0]
        edges = tuple(sorted((v, u) if v < u else (u, v) for u in adj[v]))
        es_assigned[v] = edges
        for u in adj[v]:
            adj[u].discard(v)
        adj[v] = set()
        active.discard(v)
        peel_order.append(v)
    clusters = []
    for idx, comp in enumerate(connected_components(g, within=active)):
        edges = frozenset(
            e for e in g.edges if e[0] in comp and e[1] in comp
        )
        clusters.append(
            Cluster(index=idx, leader=min(comp), members=comp, edges=edges)
        )
    cluster_index: dict[int, int | None] = {v: None for v in range(g.n)}
    for c in clusters:
        for v in c.members:
            cluster_index[v] = c.index
    return Decomposition(
        n=g.n,
        delta=delta,
        min_degree_constant=min_degree_constant,
        d_min=d_min,
        peel_order=tuple(peel_order),
        es_assigned=es_assigned,
        clusters=tuple(clusters),
        cluster_index=cluster_index,
    )


def heavy_map(
    g: Graph, dec: Decomposition, epsilon: Fraction = DEFAULT_EPSILON
) -> dict[int, frozenset[int]]:
    """Per cluster: non-members with more than n^epsilon member neighbors."""
    light_max = frac_pow_floor(g.n, _as_fraction(epsilon))
    out: dict[int, frozenset[int]] = {}
    for c in dec.clusters:
        heavies = frozenset(
            v
            for v in range(g.n)
            if v not in c.members and len(g.adj[v] & c.members) > light_max
        )
        out[c.index] = heavies
    return out


def light_map(
    g: Graph, dec: Decomposition, epsilon: Fraction = DEFAULT_EPSILON
) -> dict[int, frozenset[int]]:
    """Per cluster: non-members with 1..n^epsilon member neighbors."""
    light_max = frac_pow_floor(g.n, _as_fraction(epsilon))
    out: dict[int, frozenset[int]] = {}
    for c in dec.clusters:
        out[c.index] = frozenset(
            v
            for v in range(g.n)
            if v not in c.members and 1 <= len(g.adj[v] & c.members) <= light_max
        )
    return out


# ---------------------------------------------------------------------------
# Sparse phase.
# ---------------------------------------------------------------------------


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _sparse_finds(
    v: int,
    real_neighbors: frozenset[int],
    known_es: set[tuple[int, int]],
    nbr_leader: dict[int, int | None],
) -> set[tuple[int, ...]]:
    """Diamonds certifiable at v from sparse-edge knowledge alone.

    Wing rule: v takes the wing seat, the spine is a sparse-adjacent
    pair, the far wing is any common sparse neighbor of the spine that
    v can swear is not its own neighbor.  Spine rule: v takes a spine
    seat; the non-edge between the candidate wings (both real neighbors
    of v) is certified unless they sit in one cluster, a case the wing
    rule of both wings handles instead.
    """
    es_adj: dict[int, set[int]] = {}
    for a, b in known_es:
        es_adj.setdefault(a, set()).add(b)
        es_adj.setdefault(b, set()).add(a)
    found: set[tuple[int, ...]] = set()
    es_nb = sorted(es_adj.get(v, ()))
    for i in range(len(es_nb)):
        for j in range(i + 1, len(es_nb)):
            a, b = es_nb[i], es_nb[j]
            if _norm(a, b) not in known_es:
                continue
            # Wing rule: spine (a, b), far wing d.
            for d in sorted((es_adj[a] & es_adj[b]) - {v}):
                if d not in real_neighbors:
                    found.add(tuple(sorted((v, a, b, d))))
    for b in es_nb:
        common = sorted((es_adj[v] & es_adj[b]) - {b, v})
        for i in range(len(common)):
            for j in range(i + 1, len(common)):
                c, d = common[i], common[j]
                if _norm(c, d) in known_es:
                    continue
                lc, ld = nbr_leader.get(c), nbr_leader.get(d)
                if lc is not None and lc == ld:
                    continue
                found.add(tuple(sorted((v, b, c, d))))
    return found


def _cluster_flag_payload(leader: int | None, count: int, w: int) -> str:
    if leader is not None:
        return "1" + encode_uint(leader, w)
    return "0" + encode_uint(count, w)


def run_sparse_phase(
    g: Graph,
    dec: Decomposition,
    seed: int = 0,
    max_rounds: int | None = None,
) -> tuple[set[tuple[int, ...]], RunStats]:
    """Execute the sparse broadcast and listing on the simulator.

    Returns the union of per-node finds (exactly the diamonds whose
    five edges are all sparse) and the run statistics.  Per-node
    collected state doubles as warm-start knowledge for the light
    phase.
    """
    n = g.n
    w = word_bits(n)
    assigned = {v: dec.es_assigned.get(v, ()) for v in range(n)}
    leaders = {v: dec.leader_of(v) for v in range(n)}

    def init(v, neighbors, n_, rng):
        return {
            "v": v,
            "nbrs": frozenset(neighbors),
            "own": assigned[v],
            "leader": leaders[v],
            "counts": {},
            "nbr_leader": {},
            "known_es": set(assigned[v]),
            "decide_round": None,
            "found": None,
        }

    def step(state, r, inbox):
        v = state["v"]
        for src, bits in inbox.items():
            if r == 1:
                if bits[0] == "1":
                    state["nbr_leader"][src] = decode_uint(bits[1:])
                    state["counts"][src] = 0
                else:
                    state["nbr_leader"][src] = None
                    state["counts"][src] = decode_uint(bits[1:])
            else:
                a = decode_uint(bits[:w])
                b = decode_uint(bits[w:])
                state["known_es"].add(_norm(a, b))
        outbox: list[tuple[int, str]] = []
        if r == 0:
            payload = _cluster_flag_payload(state["leader"], len(state["own"]), w)
            outbox = [(u, payload) for u in sorted(state["nbrs"])]
        elif r - 1 < len(state["own"]):
            a, b = state["own"][r - 1]
            payload = encode_uint(a, w) + encode_uint(b, w)
            outbox = [(u, payload) for u in sorted(state["nbrs"])]
        if r == 1:
            state["decide_round"] = 1 + max(state["counts"].values(), default=0)
        output = None
        if state["found"] is not None:
            output = 1 if state["found"] else 0
        elif state["decide_round"] is not None and r >= state["decide_round"]:
            state["found"] = _sparse_finds(
                v, state["nbrs"], state["known_es"], state["nbr_leader"]
            )
            output = 1 if state["found"] else 0
        return state, outbox, output

    def collect(state):
        return {
            "found": tuple(sorted(state["found"] or ())),
            "known_es": frozenset(state["known_es"]),
            "nbr_leader": dict(state["nbr_leader"]),
        }

    program = NodeProgram(name="diamond-sparse", init=init, step=step, collect=collect)
    cap = dec.d_min + 3
    stats = run(
        g,
        program,
        SimConfig(max_rounds=max_rounds or max(cap, 4), seed=seed),
    )
    if stats.timed_out:
        raise RuntimeError("sparse phase exceeded its round schedule")
    found: set[tuple[int, ...]] = set()
    for res in stats.listings.values():
        found.update(res["found"])
    return found, stats


# ---------------------------------------------------------------------------
# Heavy phase.
# ---------------------------------------------------------------------------


def run_heavy_phase(
    g: Graph,
    dec: Decomposition,
    epsilon: Fraction = DEFAULT_EPSILON,
    seed: int = 0,
    budget: int = DEFAULT_WORK_BUDGET,
) -> tuple[set[tuple[int, ...]], RunStats | None, dict]:
    """Stream heavy neighbor lists into clusters, then list per cluster.

    The chunk delivery is executed on the simulator; the intra-cluster
    gathering and the listing itself are charged at
    ceil(n^(2 - delta - epsilon)) + ceil(sqrt(n)) * ceil(n^(2 - 2 delta))
    rounds per engaged cluster and computed centrally from exactly the
    delivered data plus member-incident edges.

    Returns (diamonds, run stats or None when no vertex is heavy,
    accounting dict).
    """
    epsilon = _as_fraction(epsilon)
    n = g.n
    w = word_bits(n)
    light_max = frac_pow_floor(n, epsilon)
    heavies = heavy_map(g, dec, epsilon)
    engaged = [c for c in dec.clusters if heavies[c.index]]
    accounting: dict = {
        "engaged_clusters": len(engaged),
        "charged_rounds_per_cluster": {},
        "charged_rounds_max": 0,
        "charged_rounds_sum": 0,
        "gathered_entries_max": 0,
        "gathered_entries_cap": 0,
    }
    if not engaged:
        return set(), None, accounting

    leaders = {v: dec.leader_of(v) for v in range(n)}

    # Chunk plans are derived from knowledge every node obtains in the
    # round-0 flag exchange: its neighbors' cluster leaders.
    def init(v, neighbors, n_, rng):
        nbrs = tuple(neighbors)
        plans: dict[int, list[int]] = {}
        full = sorted(nbrs)
        by_leader: dict[int, list[int]] = {}
        for u in full:
            lu = leaders[u]
            if lu is not None:
                by_leader.setdefault(lu, []).append(u)
        own_leader = leaders[v]
        for lu, members in by_leader.items():
            if lu == own_leader:
                continue
            if len(members) > light_max:
                chunk = math.ceil(len(full) / len(members))
                for t, m in enumerate(members):
                    plans[m] = full[t * chunk : (t + 1) * chunk]
        return {
            "v": v,
            "nbrs": nbrs,
            "plans": plans,
            "fragments": {},
        }

    def step(state, r, inbox):
        for src, bits in inbox.items():
            if r >= 2:
                state["fragments"].setdefault(src, []).append(decode_uint(bits))
        outbox: list[tuple[int, str]] = []
        if r == 0:
            payload = _cluster_flag_payload(leaders[state["v"]], 0, w)
            outbox = [(u, payload) for u in sorted(state["nbrs"])]
        else:
            for m, chunk in sorted(state["plans"].items()):
                idx = r - 1
                if idx < len(chunk):
                    outbox.append((m, encode_uint(chunk[idx], w)))
        output = 0 if r >= schedule_end else None
        return state, outbox, output

    def collect(state):
        return {"fragments": {u: tuple(ids) for u, ids in state["fragments"].items()}}

    max_chunk = 0
    for v in range(n):
        by_leader: dict[int, list[int]] = {}
        for u in g.adj[v]:
            lu = leaders[u]
            if lu is not None and lu != leaders[v]:
                by_leader.setdefault(lu, []).append(u)
        for members in by_leader.values():
            if len(members) > light_max:
                max_chunk = max(max_chunk, math.ceil(g.degree(v) / len(members)))
    schedule_end = 2 + max_chunk

    program = NodeProgram(name="diamond-heavy", init=init, step=step, collect=collect)
    stats = run(g, program, SimConfig(max_rounds=schedule_end + 2, seed=seed))
    if stats.timed_out:
        raise RuntimeError("heavy phase exceeded its round schedule")

    # Reassemble each heavy neighborhood from the fragments its cluster
    # members received; completeness is by construction, asserted anyway.
    exp_gather = Fraction(2) - dec.delta - epsilon
    exp_route = Fraction(2) - 2 * dec.delta
    if exp_gather < 0:
        exp_gather = Fraction(0)
    if exp_route < 0:
        exp_route = Fraction(0)
    sqrt_ceil = math.isqrt(n) if math.isqrt(n) ** 2 == n else math.isqrt(n) + 1
    charged_one = frac_pow_ceil(n, exp_gather) + sqrt_ceil * frac_pow_ceil(n, exp_route)

    found: set[tuple[int, ...]] = set()
    gathered_max = 0
    for c in engaged:
        assembled: dict[int, set[int]] = {h: set() for h in heavies[c.index]}
        for m in c.members:
            res = stats.listings[m]
            received = 0
            for src, ids in res["fragments"].items():
                received += len(ids)
                if src in assembled:
                    assembled[src].update(ids)
            gathered_max = max(gathered_max, received)
        for h, ids in assembled.items():
            if ids != set(g.adj[h]):
                raise AssertionError(f"heavy neighborhood of {h} arrived incomplete")
        knowledge = set(
            e for e in g.edges if e[0] in c.members or e[1] in c.members
        )
        for h, ids in assembled.items():
            for x in ids:
                knowledge.add(_norm(h, x))
        kg = Graph(n, knowledge)
        cluster_heavy = heavies[c.index]
        for d in list_induced_diamonds(kg, budget=budget):
            ds = set(d)
            if not any(v in cluster_heavy for v in ds):
                continue
            if not any(
                e[0] in c.members and e[1] in c.members
                for e in (
                    _norm(a, b)
                    for i, a in enumerate(d)
                    for b in d[i + 1 :]
                )
                if e in g.edges
            ):
                continue
            # Every pair of such a candidate touches a member or a heavy
            # vertex, so all six statuses are exact and the diamond real.
            found.add(tuple(sorted(d)))
        accounting["charged_rounds_per_cluster"][c.index] = charged_one
    accounting["charged_rounds_max"] = charged_one if engaged else 0
    accounting["charged_rounds_sum"] = charged_one * len(engaged)
    # Per-member capacity: each heavy neighbor contributes chunks of at
    # most ceil(deg/n^eps) entries, so one member gathers under n^(2-eps).
    accounting["gathered_entries_max"] = gathered_max
    accounting["gathered_entries_cap"] = frac_pow_ceil(n, Fraction(2) - epsilon)
    return found, stats, accounting


# ---------------------------------------------------------------------------
# Light phase.
# ---------------------------------------------------------------------------


def run_light_phase(
    g: Graph,
    dec: Decomposition,
    epsilon: Fraction = DEFAULT_EPSILON,
    warm: dict | None = None,
    seed: int = 0,
    budget: int = DEFAULT_WORK_BUDGET,
) -> tuple[set[tuple[int, ...]], RunStats, dict]:
    """Stream light neighbor lists, query pair statuses, list the rest.

    ``warm`` is the per-node collected state of a sparse-phase run on
    the same graph and decomposition (sparse knowledge and neighbor
    cluster flags); when absent a sparse exchange is executed first and
    its rounds counted here.  Reconciliation of diamonds with >= 3
    vertices in one cluster happens centrally from member-incident
    knowledge and is charged zero messages.

    Returns (diamonds, stats of the executed segments, accounting).
    """
    epsilon = _as_fraction(epsilon)
    n = g.n
    w = word_bits(n)
    light_max = frac_pow_floor(n, epsilon)
    segment_a_rounds = 0
    if warm is None:
        _, sparse_stats = run_sparse_phase(g, dec, seed=seed)
        warm = dict(sparse_stats.listings)
        segment_a_rounds = sparse_stats.rounds_used

    leaders = {v: dec.leader_of(v) for v in range(n)}
    member_sets = {c.leader: c.members for c in dec.clusters}
    heavies = heavy_map(g, dec, epsilon)

    # Central schedule: exact per-segment maxima, derivable from the
    # decomposition (a synchronizer would publish the same constants).
    entries: dict[int, list[int]] = {}
    for u in range(n):
        if leaders[u] is not None:
            entries[u] = []
            continue
        by_leader: dict[int, list[int]] = {}
        for x in sorted(g.adj[u]):
            lx = leaders[x]
            if lx is not None:
                by_leader.setdefault(lx, []).append(x)
        ent: list[int] = []
        for lx, members in sorted(by_leader.items()):
            if 1 <= len(members) <= light_max:
                ent.extend(members)
        entries[u] = sorted(ent)
    queries: dict[int, dict[int, list[int]]] = {}
    for v in range(n):
        qmap: dict[int, list[int]] = {}
        if leaders[v] is None:
            by_leader = {}
            for x in sorted(g.adj[v]):
                lx = leaders[x]
                if lx is not None:
                    by_leader.setdefault(lx, []).append(x)
            for lx, members in sorted(by_leader.items()):
                if 1 <= len(members) <= light_max:
                    for c1 in members:
                        qs = [c2 for c2 in members if c2 != c1]
                        if qs:
                            qmap[c1] = qs
        queries[v] = qmap

    lb = 1 + max((len(e) for e in entries.values()), default=0)
    max_qlen = max(
        (len(qs) for qmap in queries.values() for qs in qmap.values()), default=0
    )
    lc = 1 + max_qlen
    chunk_bits = 2 * w
    ld = math.ceil(max_qlen / chunk_bits) if max_qlen else 0
    decide_round = lb + lc + ld

    def init(v, neighbors, n_, rng):
        wk = warm.get(v, {"known_es": frozenset(), "nbr_leader": {}})
        return {
            "v": v,
            "nbrs": tuple(neighbors),
            "known_es": set(wk["known_es"]),
            "nbr_leader": dict(wk["nbr_leader"]),
            "recv_entries": {},
            "recv_counts": {},
            "incoming_q": {},
            "incoming_expect": {},
            "answer_bits": {},
            "answer_expect": {},
            "found": None,
        }

    def step(state, r, inbox):
        v = state["v"]
        for src, bits in inbox.items():
            if r == 1:
                state["recv_counts"][src] = decode_uint(bits)
                state["recv_entries"][src] = []
            elif 2 <= r <= lb:
                state["recv_entries"].setdefault(src, []).append(decode_uint(bits))
            elif r == lb + 1:
                state["incoming_expect"][src] = decode_uint(bits)
                state["incoming_q"][src] = []
            elif lb + 2 <= r <= lb + lc:
                state["incoming_q"].setdefault(src, []).append(decode_uint(bits))
            else:
                state["answer_bits"][src] = state["answer_bits"].get(src, "") + bits
        outbox: list[tuple[int, str]] = []
        if r == 0:
            payload = encode_uint(len(entries[v]), w)
            outbox = [(u, payload) for u in state["nbrs"]]
        elif r - 1 < len(entries[v]):
            payload = encode_uint(entries[v][r - 1], w)
            outbox = [(u, payload) for u in state["nbrs"]]
        elif r == lb:
            for c1, qs in sorted(queries[v].items()):
                outbox.append((c1, encode_uint(len(qs), w)))
                state["answer_expect"][c1] = len(qs)
        elif lb < r <= lb + max_qlen:
            idx = r - lb - 1
            for c1, qs in sorted(queries[v].items()):
                if idx < len(qs):
                    outbox.append((c1, encode_uint(qs[idx], w)))
        if r >= lb + lc and ld:
            # Answer chunks: presence bits for each queried pair, in the
            # order the ids arrived, split into bandwidth-sized slices.
            chunk_idx = r - (lb + lc)
            nbset = set(state["nbrs"])
            for src, qids in sorted(state["incoming_q"].items()):
                if len(qids) != state["incoming_expect"].get(src, -1):
                    continue
                bits_all = "".join(
                    "1" if c2 in nbset else "0" for c2 in qids
                )
                piece = bits_all[chunk_idx * chunk_bits : (chunk_idx + 1) * chunk_bits]
                if piece:
                    outbox.append((src, piece))
        output = None
        if state["found"] is not None:
            output = 1 if state["found"] else 0
        elif r >= decide_round:
            state["found"] = _light_finds(state, v)
            output = 1 if state["found"] else 0
        return state, outbox, output

    def _light_finds(state, v) -> set[tuple[int, ...]]:
        found: set[tuple[int, ...]] = set()
        nbset = set(state["nbrs"])
        # Double-cluster-neighbor rule: v spans the pair (c1, c2), the
        # single-cluster-neighbor u supplies the missing-pair absence.
        for c1, qs in sorted(queries[v].items()):
            answer = state["answer_bits"].get(c1, "")
            if len(answer) < len(qs):
                continue
            for u in sorted(nbset):
                ent = state["recv_entries"].get(u)
                if not ent:
                    continue
                eset = set(ent)
                if c1 not in eset:
                    continue
                for idx, c2 in enumerate(qs):
                    if c2 in eset or c2 == u:
                        continue
                    if answer[idx] == "1":
                        found.add(tuple(sorted((v, u, c1, c2))))
        # Member rule: v is a cluster vertex joining two of its light
        # neighbors whose mutual absence the sparse knowledge certifies.
        own_leader = leaders[v]
        if own_leader is not None:
            members = member_sets[own_leader]
            lights = sorted(
                u
                for u, ent in state["recv_entries"].items()
                if ent and v in ent
            )
            for i in range(len(lights)):
                for j in range(i + 1, len(lights)):
                    u1, u2 = lights[i], lights[j]
                    if _norm(u1, u2) in state["known_es"]:
                        continue
                    shared = (
                        set(state["recv_entries"][u1])
                        & set(state["recv_entries"][u2])
                        & nbset
                        & members
                    ) - {v}
                    for c2 in sorted(shared):
                        found.add(tuple(sorted((u1, u2, v, c2))))
        return found

    def collect(state):
        return {
            "found": tuple(sorted(state["found"] or ())),
            "max_query": max(
                (len(qs) for qs in queries[state["v"]].values()), default=0
            ),
        }

    program = NodeProgram(name="diamond-light", init=init, step=step, collect=collect)
    stats = run(g, program, SimConfig(max_rounds=decide_round + 2, seed=seed))
    if stats.timed_out:
        raise RuntimeError("light phase exceeded its round schedule")

    found: set[tuple[int, ...]] = set()
    for res in stats.listings.values():
        found.update(res["found"])
    l1_l2_count = len(found)

    # Reconciliation: diamonds with >= 3 vertices in one cluster have all
    # six pairs member-incident, so member knowledge already inside the
    # cluster decides them; zero messages charged.
    reconcile: set[tuple[int, ...]] = set()
    for c in dec.clusters:
        incident = frozenset(
            e for e in g.edges if e[0] in c.members or e[1] in c.members
        )
        kg = Graph(n, incident)
        for d in list_induced_diamonds(kg, budget=budget):
            ds = set(d)
            if len(ds & c.members) < 3:
                continue
            if any(v in heavies[c.index] for v in ds):
                continue
            reconcile.add(tuple(sorted(d)))
    found |= reconcile

    accounting = {
        "segment_a_rounds": segment_a_rounds,
        "executed_rounds": stats.rounds_used + segment_a_rounds,
        "query_len_max": max_qlen,
        "query_len_cap": max(0, light_max - 1),
        "pair_rule_found": l1_l2_count,
        "reconcile_found": len(reconcile),
    }
    return found, stats, accounting


# ---------------------------------------------------------------------------
# Orchestration, coverage, advisory.
# ---------------------------------------------------------------------------


@dataclass
class DiamondRunStats:
    n: int
    m: int
    delta: str
    epsilon: str
    min_degree_constant: int
    d_min: int
    light_max: int
    es_cap: int
    cluster_count: int
    cluster_sizes: tuple[int, ...]
    outsider_count: int
    sparse_rounds: int
    sparse_messages: int
    sparse_found: int
    heavy_executed_rounds: int
    heavy_messages: int
    heavy_found: int
    heavy_engaged_clusters: int
    heavy_charged_rounds_max: int
    heavy_charged_rounds_sum: int
    gathered_entries_max: int
    gathered_entries_cap: int
    light_executed_rounds: int
    light_messages: int
    light_pair_rule_found: int
    light_reconcile_found: int
    light_found: int
    query_len_max: int
    query_len_cap: int
    total_found: int
    coverage_counts: dict | None = None

    def to_json_bytes(self) -> bytes:
        payload = {k: v for k, v in self.__dict__.items()}
        payload["cluster_sizes"] = list(self.cluster_sizes)
        return canonical_json_bytes(payload)


def list_induced_diamonds_congest(
    g: Graph,
    delta: Fraction = DEFAULT_DELTA,
    epsilon: Fraction = DEFAULT_EPSILON,
    min_degree_constant: int = DEFAULT_MIN_DEGREE_CONSTANT,
    seed: int = 0,
    budget: int = DEFAULT_WORK_BUDGET,
    with_coverage: bool = False,
) -> tuple[tuple[tuple[int, ...], ...], DiamondRunStats]:
    """Full distributed listing: decompose, run the three phases, union.

    The returned listing is sorted and duplicate-free; the stats report
    executed rounds and messages per phase, the charged gather cost,
    and the observed caps.  With with_coverage=True the stats also
    count expected phases over the phase outputs themselves.
    """
    delta = _as_fraction(delta)
    epsilon = _as_fraction(epsilon)
    dec = decompose_by_peeling(g, delta, min_degree_constant)
    problems = dec.validate(g)
    if problems:
        raise AssertionError("; ".join(problems))

    sparse_found, sparse_stats = run_sparse_phase(g, dec, seed=seed)
    heavy_found, heavy_stats, heavy_acct = run_heavy_phase(
        g, dec, epsilon, seed=seed, budget=budget
    )
    light_found, light_stats, light_acct = run_light_phase(
        g,
        dec,
        epsilon,
        warm=dict(sparse_stats.listings),
        seed=seed,
        budget=budget,
    )
    all_found = sorted(sparse_found | heavy_found | light_found)

    coverage = None
    if with_coverage:
        tags = coverage_tags(g, dec, epsilon, tuple(all_found))
        coverage = {}
        for tag in tags.values():
            coverage[tag] = coverage.get(tag, 0) + 1

    stats = DiamondRunStats(
        n=g.n,
        m=g.m,
        delta=str(delta),
        epsilon=str(epsilon),
        min_degree_constant=min_degree_constant,
        d_min=dec.d_min,
        light_max=frac_pow_floor(g.n, epsilon),
        es_cap=dec.es_cap(),
        cluster_count=len(dec.clusters),
        cluster_sizes=tuple(sorted(len(c.members) for c in dec.clusters)),
        outsider_count=len(dec.peel_order),
        sparse_rounds=sparse_stats.rounds_used,
        sparse_messages=sparse_stats.message_count,
        sparse_found=len(sparse_found),
        heavy_executed_rounds=heavy_stats.rounds_used if heavy_stats else 0,
        heavy_messages=heavy_stats.message_count if heavy_stats else 0,
        heavy_found=len(heavy_found),
        heavy_engaged_clusters=heavy_acct["engaged_clusters"],
        heavy_charged_rounds_max=heavy_acct["charged_rounds_max"],
        heavy_charged_rounds_sum=heavy_acct["charged_rounds_sum"],
        gathered_entries_max=heavy_acct["gathered_entries_max"],
        gathered_entries_cap=heavy_acct["gathered_entries_cap"],
        light_executed_rounds=light_acct["executed_rounds"],
        light_messages=light_stats.message_count,
        light_pair_rule_found=light_acct["pair_rule_found"],
        light_reconcile_found=light_acct["reconcile_found"],
        light_found=len(light_found),
        query_len_max=light_acct["query_len_max"],
        query_len_cap=light_acct["query_len_cap"],
        total_found=len(all_found),
        coverage_counts=coverage,
    )
    return tuple(all_found), stats


def coverage_tags(
    g: Graph,
    dec: Decomposition,
    epsilon: Fraction = DEFAULT_EPSILON,
    diamonds: tuple[tuple[int, ...], ...] | None = None,
    budget: int = DEFAULT_WORK_BUDGET,
) -> dict[tuple[int, ...], str]:
    """Expected phase for every induced diamond.

    A diamond's five edges are either all sparse, or they include member
    edges of exactly one cluster (member edges of two different clusters
    cannot coexist in one diamond: the cross pairs would have to be
    member-to-member edges between clusters, which the single-level
    split forbids).  That cluster then decides heavy versus light, and
    within light the member count picks reconciliation while the missing
    pair picks which pair rule fires.
    """
    epsilon = _as_fraction(epsilon)
    if diamonds is None:
        diamonds = tuple(list_induced_diamonds(g, budget=budget))
    es = dec.es_edges()
    heavies = heavy_map(g, dec, epsilon)
    tags: dict[tuple[int, ...], str] = {}
    for d in diamonds:
        edges = [
            _norm(a, b)
            for i, a in enumerate(d)
            for b in d[i + 1 :]
            if g.has_edge(a, b)
        ]
        if all(e in es for e in edges):
            tags[d] = "sparse"
            continue
        em_edge = next(e for e in edges if e not in es)
        ci = dec.cluster_index[em_edge[0]]
        members = dec.clusters[ci].members
        ds = set(d)
        if any(v in heavies[ci] for v in ds):
            tags[d] = "heavy"
        elif len(ds & members) >= 3:
            tags[d] = "light-reconcile"
        else:
            u1, u2 = sorted(ds - members)
            tags[d] = "light-pair-absent" if not g.has_edge(u1, u2) else (
                "light-pair-present"
            )
    return tags


def cluster_conductance_advisory(
    g: Graph, dec: Decomposition, max_size: int = 400
) -> dict[int, float]:
    """Second-smallest normalized-Laplacian eigenvalue per cluster.

    Purely advisory: a low value flags a cluster that a finer split
    would cut, which affects constants, not correctness.  Clusters
    larger than max_size are skipped.
    """
    out: dict[int, float] = {}
    for c in dec.clusters:
        k = len(c.members)
        if k > max_size or k < 2:
            continue
        idx = {v: i for i, v in enumerate(sorted(c.members))}
        a = np.zeros((k, k))
        for u, v in c.edges:
            a[idx[u], idx[v]] = a[idx[v], idx[u]] = 1.0
        deg = a.sum(axis=1)
        with np.errstate(divide="ignore"):
            dinv = np.where(deg > 0, 1.0 / np.sqrt(deg), 0.0)
        lap = np.eye(k) - (a * dinv).T * dinv
        eigs = np.linalg.eigvalsh(lap)
        out[c.index] = float(np.sort(eigs)[1])
    return out
