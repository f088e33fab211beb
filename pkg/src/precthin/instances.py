"""JSON instance documents: the single graph interchange format.

A document carries ``vertices`` and ``edges`` and optionally a ``partition``
and an ``order``. Serialization is byte-stable: sorted keys, sorted edge
pairs, two-space indentation, trailing newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .graphs import Graph, Ordering, Partition


class InstanceError(Exception):
    """Malformed instance document; the message names the offending field."""


@dataclass(frozen=True)
class InstanceDocument:
    graph: Graph
    partition: Partition | None = None
    order: Ordering | None = None


def parse_instance(data: Any) -> InstanceDocument:
    if not isinstance(data, dict):
        raise InstanceError("top level: expected a JSON object")
    for key in ("vertices", "edges"):
        if key not in data:
            raise InstanceError(f"{key}: missing")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise InstanceError("vertices: expected a list of strings")
    if len(set(vertices)) != len(vertices):
        raise InstanceError("vertices: duplicate ids")
    vset = set(vertices)
    edges = data["edges"]
    if not isinstance(edges, list):
        raise InstanceError("edges: expected a list of pairs")
    pairs = []
    for k, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, str) for x in e):
            raise InstanceError(f"edges[{k}]: expected a pair of vertex ids")
        u, v = e
        if u not in vset or v not in vset:
            raise InstanceError(f"edges[{k}]: unknown vertex")
        if u == v:
            raise InstanceError(f"edges[{k}]: self-loop")
        pairs.append((u, v))
    graph = Graph.build(vertices, pairs)

    partition = None
    if data.get("partition") is not None:
        raw = data["partition"]
        if not isinstance(raw, list) or not all(isinstance(part, list) for part in raw):
            raise InstanceError("partition: expected a list of vertex lists")
        seen: set[str] = set()
        for k, part in enumerate(raw):
            if not part:
                raise InstanceError(f"partition[{k}]: empty part")
            for v in part:
                if not isinstance(v, str) or v not in vset:
                    raise InstanceError(f"partition[{k}]: unknown vertex {v!r}")
                if v in seen:
                    raise InstanceError(f"partition[{k}]: vertex {v!r} repeated")
                seen.add(v)
        if seen != vset:
            raise InstanceError("partition: does not cover the vertex set")
        partition = tuple(frozenset(part) for part in raw)

    order = None
    if data.get("order") is not None:
        raw = data["order"]
        if not isinstance(raw, list) or not all(isinstance(v, str) for v in raw):
            raise InstanceError("order: expected a list of vertex ids")
        if set(raw) != vset or len(raw) != len(vset):
            raise InstanceError("order: not a permutation of the vertex set")
        order = tuple(raw)
    return InstanceDocument(graph, partition, order)


def load_instance(path: str) -> InstanceDocument:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    return parse_instance(data)


def graph_payload(g: Graph, partition=None, part_roles=None) -> dict:
    payload: dict[str, Any] = {
        "vertices": sorted(g.vertices),
        "edges": [list(e) for e in g.edge_list()],
    }
    if partition is not None:
        payload["partition"] = [sorted(part) for part in partition]
    if part_roles is not None:
        payload["part_roles"] = list(part_roles)
    return payload


def dump_payload(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
