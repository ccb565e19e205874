"""On-disk instance bundles and canonical JSON.

A bundle is a directory with three files: graph.txt (canonical edge
list), meta.json (family, side split, cut, labels, blocks, structure),
and inputs.json (the bit pair, hex-encoded).  Everything is written
through canonical_json_bytes, so building the same instance twice
yields byte-identical bundles; reports elsewhere in the package reuse
the same encoder for the same reason.
"""

from __future__ import annotations

import json
from pathlib import Path

from .bitstrings import bits_to_hex, hex_to_bits
from .families import FamilyInstance, InputPair
from .graphs import Graph, crossing_edges

SCHEMA_VERSION = 1

__all__ = ["SCHEMA_VERSION", "canonical_json_bytes", "read_bundle", "write_bundle"]


def canonical_json_bytes(obj) -> bytes:
    """Deterministic JSON: sorted keys, fixed separators, no NaN, one
    trailing newline.  Equal objects serialize to equal bytes."""
    return (
        json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"
    ).encode("utf-8")


def write_bundle(inst: FamilyInstance, directory: str | Path) -> Path:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "graph.txt").write_text(inst.graph.to_text())
    meta = {
        "schema_version": SCHEMA_VERSION,
        "family": inst.family,
        "params": inst.params,
        "n_vertices": inst.graph.n,
        "side_a": list(inst.side_a),
        "side_b": list(inst.side_b),
        "cut_edges": [list(e) for e in sorted(inst.cut_edges)],
        "labels": {str(v): name for v, name in inst.labels.items()},
        "blocks": {key: list(vs) for key, vs in inst.blocks.items()},
        "meta": inst.meta,
    }
    (d / "meta.json").write_bytes(canonical_json_bytes(meta))
    inputs = {
        "schema_version": SCHEMA_VERSION,
        "bits": inst.pair.length,
        "x_hex": bits_to_hex(inst.pair.x),
        "y_hex": bits_to_hex(inst.pair.y),
    }
    (d / "inputs.json").write_bytes(canonical_json_bytes(inputs))
    return d


def read_bundle(directory: str | Path) -> FamilyInstance:
    d = Path(directory)
    g = Graph.from_text((d / "graph.txt").read_text())
    meta = json.loads((d / "meta.json").read_text())
    if meta["schema_version"] != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {meta['schema_version']}")
    inputs = json.loads((d / "inputs.json").read_text())
    pair = InputPair(
        x=hex_to_bits(inputs["x_hex"], inputs["bits"]),
        y=hex_to_bits(inputs["y_hex"], inputs["bits"]),
    )
    side_a = tuple(meta["side_a"])
    inst = FamilyInstance(
        family=meta["family"],
        params=meta["params"],
        pair=pair,
        graph=g,
        side_a=side_a,
        side_b=tuple(meta["side_b"]),
        cut_edges=crossing_edges(g, side_a),
        labels={int(v): name for v, name in meta["labels"].items()},
        blocks={key: tuple(vs) for key, vs in meta["blocks"].items()},
        meta=meta["meta"],
    )
    stored_cut = frozenset(tuple(e) for e in meta["cut_edges"])
    if stored_cut != inst.cut_edges:
        raise ValueError("stored cut_edges disagree with the graph and side split")
    return inst
