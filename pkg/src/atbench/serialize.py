"""JSON wire formats for base diagrams and tropical graphs.

Rationals travel as [numerator, denominator] string pairs so arbitrarily
large coordinates survive; cut directions and classes stay plain integers.
The emitted byte layout is deterministic: two-space indentation, fixed key
order, so serialize-parse-serialize round trips are byte identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .atbd import AlmostToricBase, CutContent
from .lattice import Pt, Vec
from .tropical import (
    BENDING,
    BOUNDARY,
    INTERIOR,
    CutAttachment,
    NodeAttachment,
    SideAttachment,
    TropicalEdge,
    TropicalGraph,
    TropicalVertex,
)


class FormatError(ValueError):
    pass


def rational_to_json(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


def rational_from_json(obj) -> Fraction:
    if not (isinstance(obj, list) and len(obj) == 2):
        raise FormatError(f"rational must be a [num, den] pair, got {obj!r}")
    return Fraction(int(obj[0]), int(obj[1]))


def point_to_json(p: Pt) -> list[list[str]]:
    return [rational_to_json(p.x), rational_to_json(p.y)]


def point_from_json(obj) -> Pt:
    if not (isinstance(obj, list) and len(obj) == 2):
        raise FormatError(f"point must be a coordinate pair, got {obj!r}")
    return Pt(rational_from_json(obj[0]), rational_from_json(obj[1]))


def base_to_dict(base: AlmostToricBase, marked_sides=(), marked_cut_segments=()) -> dict:
    return {
        "vertices": [point_to_json(v) for v in base.vertices],
        "cuts": [
            {
                "direction": [c.direction.x, c.direction.y],
                "nodes": c.node_count,
                "positions": [rational_to_json(r) for r in c.positions],
            }
            for c in base.cuts
        ],
        "marked_sides": sorted(marked_sides),
        "marked_cut_segments": [list(seg) for seg in sorted(marked_cut_segments)],
    }


def base_from_dict(obj) -> tuple[AlmostToricBase, tuple[int, ...], tuple[tuple[int, int], ...]]:
    try:
        vertices = [point_from_json(v) for v in obj["vertices"]]
        raw_cuts = []
        for c in obj["cuts"]:
            direction = Vec(int(c["direction"][0]), int(c["direction"][1]))
            positions = c.get("positions")
            if positions is not None and positions != []:
                positions = [rational_from_json(r) for r in positions]
            elif c["nodes"] > 0 and not positions:
                positions = None          # defaulted at construction
            else:
                positions = []
            raw_cuts.append((direction, int(c["nodes"]), positions))
        marked_sides = tuple(int(s) for s in obj.get("marked_sides", []))
        marked_cuts = tuple(
            (int(a), int(b)) for a, b in obj.get("marked_cut_segments", [])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed base document: {exc}") from exc
    base = AlmostToricBase.build(vertices, raw_cuts)
    return base, marked_sides, marked_cuts


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def base_dumps(base: AlmostToricBase, marked_sides=(), marked_cut_segments=()) -> str:
    return dumps(base_to_dict(base, marked_sides, marked_cut_segments))


def base_loads(text: str) -> AlmostToricBase:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not JSON: {exc}") from exc
    return base_from_dict(obj)[0]


def _attachment_to_json(v: TropicalVertex):
    if isinstance(v.attachment, SideAttachment):
        return {"side": v.attachment.side}
    if isinstance(v.attachment, NodeAttachment):
        return {"node": [v.attachment.vertex, v.attachment.node]}
    if isinstance(v.attachment, CutAttachment):
        return {"cut": v.attachment.vertex}
    return None


def _attachment_from_json(obj):
    if obj is None:
        return None
    if "side" in obj:
        return SideAttachment(int(obj["side"]))
    if "node" in obj:
        return NodeAttachment(int(obj["node"][0]), int(obj["node"][1]))
    if "cut" in obj:
        return CutAttachment(int(obj["cut"]))
    raise FormatError(f"unknown attachment {obj!r}")


def graph_to_dict(graph: TropicalGraph) -> dict:
    return {
        "host": base_to_dict(graph.host),
        "vertices": [
            {
                "kind": v.kind,
                "position": point_to_json(v.position),
                "attachment": _attachment_to_json(v),
            }
            for v in graph.vertices
        ],
        "edges": [
            {
                "tail": e.tail,
                "head": e.head,
                "polyline": [point_to_json(p) for p in e.polyline],
                "class": [e.klass.x, e.klass.y],
                "multiplicity": e.multiplicity,
            }
            for e in graph.edges
        ],
    }


def graph_from_dict(obj) -> TropicalGraph:
    try:
        host = base_from_dict(obj["host"])[0]
        vertices = tuple(
            TropicalVertex(
                v["kind"],
                point_from_json(v["position"]),
                _attachment_from_json(v.get("attachment")),
            )
            for v in obj["vertices"]
        )
        edges = tuple(
            TropicalEdge(
                int(e["tail"]),
                int(e["head"]),
                tuple(point_from_json(p) for p in e["polyline"]),
                Vec(int(e["class"][0]), int(e["class"][1])),
                int(e["multiplicity"]),
            )
            for e in obj["edges"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed graph document: {exc}") from exc
    if any(v.kind not in (BOUNDARY, BENDING, INTERIOR) for v in vertices):
        raise FormatError("unknown vertex kind")
    return TropicalGraph(host, vertices, edges)


def graph_dumps(graph: TropicalGraph) -> str:
    return dumps(graph_to_dict(graph))


def graph_loads(text: str) -> TropicalGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not JSON: {exc}") from exc
    return graph_from_dict(obj)
