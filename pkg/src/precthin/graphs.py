"""Immutable graph, digraph, ordering and partition primitives.

Vertex identifiers are opaque strings; every deterministic tie-break in the
library is lexicographic on these strings so that certificates are
reproducible across runs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

VertexId = str
Ordering = tuple[VertexId, ...]
Partition = tuple[frozenset[VertexId], ...]


class CycleDetected(Exception):
    """Raised when a topological order is requested for a cyclic digraph.

    ``cycle`` is one directed cycle as a vertex sequence, closed (first
    element repeated at the end).
    """

    def __init__(self, cycle: Sequence[VertexId]):
        self.cycle = tuple(cycle)
        super().__init__("directed cycle: " + " -> ".join(self.cycle))


def _normalize_edge(u: VertexId, v: VertexId) -> frozenset[VertexId]:
    if u == v:
        raise ValueError(f"self-loop at {u!r}")
    return frozenset((u, v))


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph over string vertex ids."""

    vertices: tuple[VertexId, ...]
    edges: frozenset[frozenset[VertexId]]

    @staticmethod
    def build(vertices: Iterable[VertexId], edges: Iterable[Sequence[VertexId]] = ()) -> "Graph":
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex ids")
        vset = set(vs)
        es = set()
        for e in edges:
            u, v = e
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u!r}, {v!r}) references an undeclared vertex")
            es.add(_normalize_edge(u, v))
        return Graph(vs, frozenset(es))

    @staticmethod
    def from_edges(edges: Iterable[Sequence[VertexId]], isolated: Iterable[VertexId] = ()) -> "Graph":
        """Graph whose vertex set is inferred from the edges, sorted."""
        es = list(edges)
        vs = sorted({v for e in es for v in e} | set(isolated))
        return Graph.build(vs, es)

    @cached_property
    def _adj(self) -> dict[VertexId, frozenset[VertexId]]:
        nbrs: dict[VertexId, set[VertexId]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._adj

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return u != v and v in self._adj.get(u, ())

    def neighbors(self, v: VertexId) -> frozenset[VertexId]:
        return self._adj[v]

    def closed_neighbors(self, v: VertexId) -> frozenset[VertexId]:
        return self._adj[v] | {v}

    def degree(self, v: VertexId) -> int:
        return len(self._adj[v])

    def edge_list(self) -> list[tuple[VertexId, VertexId]]:
        """Edges as sorted pairs, sorted; the canonical serialization order."""
        return sorted(tuple(sorted(e)) for e in self.edges)


@dataclass(frozen=True)
class Digraph:
    """Directed graph; parallel arcs collapse, arcs are ordered pairs."""

    vertices: tuple[VertexId, ...]
    arcs: frozenset[tuple[VertexId, VertexId]]

    @staticmethod
    def build(vertices: Iterable[VertexId], arcs: Iterable[Sequence[VertexId]] = ()) -> "Digraph":
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex ids")
        vset = set(vs)
        normalized = set()
        for a in arcs:
            u, v = a
            if u not in vset or v not in vset:
                raise ValueError(f"arc ({u!r}, {v!r}) references an undeclared vertex")
            normalized.add((u, v))
        return Digraph(vs, frozenset(normalized))

    def with_arcs(self, arcs: Iterable[Sequence[VertexId]]) -> "Digraph":
        return Digraph.build(self.vertices, list(self.arcs) + [tuple(a) for a in arcs])

    @cached_property
    def _succ(self) -> dict[VertexId, frozenset[VertexId]]:
        out: dict[VertexId, set[VertexId]] = {v: set() for v in self.vertices}
        for u, v in self.arcs:
            out[u].add(v)
        return {v: frozenset(s) for v, s in out.items()}


def induced_subgraph(g: Graph, vs: Iterable[VertexId]) -> Graph:
    """Subgraph of ``g`` on ``vs`` keeping exactly the edges inside ``vs``."""
    wanted = set(vs)
    unknown = wanted - set(g.vertices)
    if unknown:
        raise ValueError(f"unknown vertices: {sorted(unknown)}")
    kept = tuple(v for v in g.vertices if v in wanted)
    edges = frozenset(e for e in g.edges if e <= wanted)
    return Graph(kept, edges)


def topological_sort(d: Digraph) -> Ordering:
    """Topological order emitting the lexicographically smallest available
    vertex at every step.

    Raises :class:`CycleDetected` with one directed cycle as evidence.
    """
    indeg = {v: 0 for v in d.vertices}
    succ = d._succ
    for u, v in d.arcs:
        if u == v:
            raise CycleDetected((u, u))
        indeg[v] += 1
    heap = [v for v in d.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    out: list[VertexId] = []
    while heap:
        v = heapq.heappop(heap)
        out.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(out) != len(d.vertices):
        raise CycleDetected(_find_cycle(d, {v for v in d.vertices if v not in set(out)}))
    return tuple(out)


def _find_cycle(d: Digraph, candidates: set[VertexId]) -> tuple[VertexId, ...]:
    # Every unemitted vertex has an unemitted predecessor, so walking
    # predecessors inside `candidates` must revisit a vertex.
    pred: dict[VertexId, set[VertexId]] = {v: set() for v in candidates}
    for u, v in d.arcs:
        if u in candidates and v in candidates:
            pred[v].add(u)
    start = min(candidates)
    seen = {start: 0}
    path = [start]
    while True:
        prv = min(pred[path[-1]])
        if prv in seen:
            return (prv,) + tuple(reversed(path[seen[prv]:]))
        seen[prv] = len(path)
        path.append(prv)


def is_connected(g: Graph) -> bool:
    """True when every vertex pair is joined by a path; empty graph counts."""
    if g.n <= 1:
        return True
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        for w in g.neighbors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def connected_components(g: Graph) -> list[tuple[VertexId, ...]]:
    """Components as vertex tuples, each sorted, ordered by smallest vertex."""
    remaining = set(g.vertices)
    comps = []
    while remaining:
        root = min(remaining)
        seen = {root}
        stack = [root]
        while stack:
            for w in g.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(seen)))
        remaining -= seen
    return sorted(comps, key=lambda c: c[0])


def check_ordering(g: Graph, s: Sequence[VertexId]) -> Ordering:
    """Validate that ``s`` is a permutation of ``V(g)`` and return it."""
    t = tuple(s)
    if len(t) != g.n or set(t) != set(g.vertices) or len(set(t)) != len(t):
        raise ValueError("ordering is not a permutation of the vertex set")
    return t


def check_partition(g: Graph, parts: Iterable[Iterable[VertexId]]) -> Partition:
    """Validate disjoint nonempty parts covering ``V(g)``; return frozensets."""
    ps = tuple(frozenset(p) for p in parts)
    if any(not p for p in ps):
        raise ValueError("empty part")
    total = 0
    for p in ps:
        total += len(p)
    union = frozenset().union(*ps) if ps else frozenset()
    if total != len(union) or union != set(g.vertices):
        raise ValueError("parts must be disjoint and cover the vertex set exactly")
    return ps


class _BitView:
    """Position-indexed adjacency bitmasks for an ordering; internal helper
    for the O(n^3)-style scans that dominate verification workloads."""

    __slots__ = ("order", "pos", "adj")

    def __init__(self, g: Graph, order: Sequence[VertexId]):
        self.order = tuple(order)
        self.pos = {v: i for i, v in enumerate(self.order)}
        pos = self.pos
        masks = [0] * len(self.order)
        for e in g.edges:
            u, v = tuple(e)
            iu, iv = pos[u], pos[v]
            masks[iu] |= 1 << iv
            masks[iv] |= 1 << iu
        self.adj = masks
