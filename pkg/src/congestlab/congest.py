"""Synchronous message-passing simulator with per-edge bandwidth accounting.

The model: nodes run in lockstep rounds; per round each node may send
one message of at most ``bandwidth_bits`` bits (default two address
words) over each incident edge in each direction; a message sent in
round r is delivered at the start of round r + 1, never earlier.  A
node's output is a single decision bit, final once set; a run answers
Yes when at least one node outputs 1 and No when all output 0.

Programs are triples of pure callables over explicit state, so the
engine can enforce the model from outside: destinations must be
neighbors, one message per edge per direction per round, message
length capped, outputs immutable.  Violations raise instead of being
silently clipped.  When a cut (an edge set) is supplied, the engine
counts every bit sent across it round by round; that account is what
links simulated runs to two-party communication lower bounds.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .graphs import Graph

__all__ = [
    "CutTrafficReport",
    "NodeProgram",
    "PROGRAMS",
    "ProtocolViolation",
    "RunStats",
    "SimConfig",
    "constant_program",
    "cut_traffic_bound_check",
    "decode_uint",
    "default_bandwidth",
    "encode_uint",
    "flood_program",
    "naive_four_cycle_program",
    "run",
    "silent_program",
    "word_bits",
]


def word_bits(n: int) -> int:
    """Bits needed to address n vertices; at least 1."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def default_bandwidth(n: int) -> int:
    """Two address words per message per round."""
    return 2 * word_bits(n)


def encode_uint(value: int, width: int) -> str:
    if value < 0 or value >= 2**width:
        raise ValueError(f"value {value} does not fit in {width} bits")
    return format(value, f"0{width}b")


def decode_uint(bits: str) -> int:
    return int(bits, 2) if bits else 0


class ProtocolViolation(RuntimeError):
    """A program broke the model: bad destination, oversized or duplicate
    message, or a changed output."""


@dataclass(frozen=True)
class SimConfig:
    bandwidth_bits: int | None = None
    max_rounds: int = 10_000
    seed: int = 0


@dataclass(frozen=True)
class NodeProgram:
    """Per-node behavior.

    ``init(v, neighbors, n, rng)`` returns the node's initial state;
    the rng is a private per-node stream derived from the run seed.
    ``step(state, round_index, inbox)`` returns (state, outbox, output)
    where inbox maps sender id to bit string, outbox lists
    (destination, bits), and output is None while undecided, else the
    final 0/1.  ``collect(state)``, when set, extracts a per-node
    result (e.g. a listing) after the run.
    """

    name: str
    init: Callable[[int, tuple[int, ...], int, random.Random], Any]
    step: Callable[[Any, int, dict[int, str]], tuple[Any, list[tuple[int, str]], Any]]
    collect: Callable[[Any], Any] | None = None


@dataclass(frozen=True)
class RunStats:
    rounds_used: int
    timed_out: bool
    node_outputs: tuple
    per_round_cut_bits: tuple[int, ...]
    total_cut_bits: int
    message_count: int
    max_message_bits: int
    cut_messages: tuple | None = None
    listings: dict = field(default_factory=dict, repr=False)

    @property
    def decision(self):
        """1 if some node output 1, 0 if all output 0, None if undecided."""
        if any(o is None for o in self.node_outputs):
            return None
        return 1 if any(o == 1 for o in self.node_outputs) else 0


def run(
    g: Graph,
    program: NodeProgram,
    config: SimConfig = SimConfig(),
    cut: frozenset[tuple[int, int]] | None = None,
    record_cut_messages: bool = False,
) -> RunStats:
    """Execute *program* on every node of *g* until all decide or the
    round cap is hit (reported via timed_out, not an exception)."""
    n = g.n
    bandwidth = (
        config.bandwidth_bits if config.bandwidth_bits is not None else default_bandwidth(n)
    )
    cut_set = frozenset(cut) if cut is not None else frozenset()

    states = [
        program.init(v, tuple(sorted(g.adj[v])), n, random.Random(f"{config.seed}:{v}"))
        for v in range(n)
    ]
    outputs: list = [None] * n
    inbox_next: dict[int, dict[int, str]] = {}
    per_round_cut_bits: list[int] = []
    cut_messages: list[tuple[int, int, int, str]] = []
    message_count = 0
    max_message_bits = 0
    rounds_used = 0
    timed_out = True

    for r in range(config.max_rounds):
        inboxes = inbox_next
        inbox_next = {}
        round_cut_bits = 0
        for v in range(n):
            state, outbox, out = program.step(states[v], r, inboxes.get(v, {}))
            states[v] = state
            if out is not None:
                if out not in (0, 1):
                    raise ProtocolViolation(f"node {v} output {out!r}, want 0 or 1")
                if outputs[v] is not None and outputs[v] != out:
                    raise ProtocolViolation(
                        f"node {v} changed output {outputs[v]} -> {out} in round {r}"
                    )
                outputs[v] = out
            sent_to: set[int] = set()
            for dst, bits in outbox:
                if dst not in g.adj[v]:
                    raise ProtocolViolation(
                        f"node {v} sent to non-neighbor {dst} in round {r}"
                    )
                if dst in sent_to:
                    raise ProtocolViolation(
                        f"node {v} sent twice over edge to {dst} in round {r}"
                    )
                if not isinstance(bits, str) or any(c not in "01" for c in bits):
                    raise ProtocolViolation(f"node {v} sent non-bitstring {bits!r}")
                if len(bits) > bandwidth:
                    raise ProtocolViolation(
                        f"node {v} sent {len(bits)} bits > bandwidth {bandwidth}"
                    )
                sent_to.add(dst)
                inbox_next.setdefault(dst, {})[v] = bits
                message_count += 1
                max_message_bits = max(max_message_bits, len(bits))
                edge = (v, dst) if v < dst else (dst, v)
                if edge in cut_set:
                    round_cut_bits += len(bits)
                    if record_cut_messages:
                        cut_messages.append((r, v, dst, bits))
        per_round_cut_bits.append(round_cut_bits)
        if all(o is not None for o in outputs):
            rounds_used = r + 1
            timed_out = False
            break
    else:
        rounds_used = config.max_rounds

    return RunStats(
        rounds_used=rounds_used,
        timed_out=timed_out,
        node_outputs=tuple(outputs),
        per_round_cut_bits=tuple(per_round_cut_bits),
        total_cut_bits=sum(per_round_cut_bits),
        message_count=message_count,
        max_message_bits=max_message_bits,
        cut_messages=tuple(cut_messages) if record_cut_messages else None,
        listings=(
            {
                v: res
                for v in range(n)
                if (res := program.collect(states[v])) is not None
            }
            if program.collect is not None
            else {}
        ),
    )


# ---------------------------------------------------------------------------
# Stock programs.
# ---------------------------------------------------------------------------


def naive_four_cycle_program() -> NodeProgram:
    """Linear-round induced-4-cycle detection by neighborhood exchange.

    Each node streams its sorted neighbor list, one address per round
    (a presence flag plus one word, within bandwidth).  After n rounds
    every node knows the full neighborhood of each neighbor and checks
    locally for u, u2 in N(v) non-adjacent with a common neighbor t
    outside N(v) and distinct from v; {v, u, t, u2} is then an induced
    4-cycle, and every induced 4-cycle is seen this way by each of its
    vertices.  Decides in round n - 1, so n rounds in total.
    """

    def init(v, neighbors, n, rng):
        return {
            "v": v,
            "nbrs": neighbors,
            "n": n,
            "w": word_bits(n),
            "known": {u: set() for u in neighbors},
        }

    def step(state, r, inbox):
        w = state["w"]
        for src, bits in inbox.items():
            if bits[0] == "1":
                state["known"][src].add(decode_uint(bits[1 : 1 + w]))
        outbox = []
        if r < len(state["nbrs"]):
            payload = "1" + encode_uint(state["nbrs"][r], w)
            outbox = [(u, payload) for u in state["nbrs"]]
        output = None
        if r >= state["n"] - 1:
            output = 0
            v = state["v"]
            nbrs = state["nbrs"]
            nbr_set = set(nbrs)
            known = state["known"]
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    u, u2 = nbrs[i], nbrs[j]
                    if u2 in known[u]:
                        continue
                    for t in known[u] & known[u2]:
                        if t != v and t not in nbr_set:
                            output = 1
                            break
                    if output == 1:
                        break
                if output == 1:
                    break
        return state, outbox, output

    return NodeProgram(name="detect-four-cycle", init=init, step=step)


def flood_program(source: int = 0) -> NodeProgram:
    """Token flood from one source; nodes decide 1 on first contact.

    On a connected graph the run takes eccentricity(source) + 1 rounds,
    which makes this a timing probe for the delivery rule.
    """

    def init(v, neighbors, n, rng):
        return {"nbrs": neighbors, "informed": v == source, "sent": False}

    def step(state, r, inbox):
        if inbox:
            state["informed"] = True
        outbox = []
        if state["informed"] and not state["sent"]:
            outbox = [(u, "1") for u in state["nbrs"]]
            state["sent"] = True
        return state, outbox, 1 if state["informed"] else None

    return NodeProgram(name="flood", init=init, step=step)


def constant_program(bit: int) -> NodeProgram:
    """Every node outputs *bit* immediately; no messages."""

    def init(v, neighbors, n, rng):
        return None

    def step(state, r, inbox):
        return state, [], bit

    return NodeProgram(name=f"constant-{bit}", init=init, step=step)


def silent_program() -> NodeProgram:
    """Never decides; exists to exercise the round cap."""

    def init(v, neighbors, n, rng):
        return None

    def step(state, r, inbox):
        return state, [], None

    return NodeProgram(name="silent", init=init, step=step)


PROGRAMS: dict[str, Callable[[str | None], NodeProgram]] = {
    "detect-four-cycle": lambda arg: naive_four_cycle_program(),
    "flood": lambda arg: flood_program(int(arg) if arg else 0),
    "constant-one": lambda arg: constant_program(1),
    "constant-zero": lambda arg: constant_program(0),
    "silent": lambda arg: silent_program(),
}


@dataclass(frozen=True)
class CutTrafficReport:
    ok: bool
    measured_bits: int
    bound_bits: int
    slack_bits: int


def cut_traffic_bound_check(
    stats: RunStats, cut_size: int, bandwidth: int
) -> CutTrafficReport:
    """Compare measured cut traffic with the model ceiling: each round
    moves at most bandwidth bits per cut edge per direction."""
    bound = stats.rounds_used * 2 * cut_size * bandwidth
    return CutTrafficReport(
        ok=stats.total_cut_bits <= bound,
        measured_bits=stats.total_cut_bits,
        bound_bits=bound,
        slack_bits=bound - stats.total_cut_bits,
    )
