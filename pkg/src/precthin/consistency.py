"""Consistency of a vertex ordering with a partition.

A partition is consistent with an ordering exactly when it properly colors
the ordering's conflict graph; the strong variant adds the mirrored
condition. The greedy minimum consecutive partition opens a new part exactly
when the current vertex conflicts with the part under construction, which is
optimal among part-consecutive partitions for the given ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphs import (
    Graph,
    Ordering,
    Partition,
    VertexId,
    _BitView,
    check_ordering,
    check_partition,
)


def _conflict_masks(g: Graph, order: Ordering, strong: bool) -> list[int]:
    """Adjacency bitmasks (by position in ``order``) of the conflict graph."""
    bv = _BitView(g, order)
    n = len(order)
    adj = bv.adj
    conf = [0] * n
    for z in range(n):
        before = (1 << z) - 1
        nbrs = adj[z] & before
        non = before & ~adj[z]
        if nbrs and non:
            rest = non
            while rest:
                w = rest & -rest
                j = w.bit_length() - 1
                lower = nbrs & (w - 1)
                if lower:
                    conf[j] |= lower
                rest ^= w
    if strong:
        for x in range(n):
            after = ~((1 << (x + 1)) - 1)
            nbrs = adj[x] & after
            non = after & ~adj[x]
            if nbrs:
                rest = nbrs
                while rest:
                    w = rest & -rest
                    j = w.bit_length() - 1
                    lower = non & (w - 1) & ~((1 << (x + 1)) - 1)
                    if lower:
                        conf[j] |= lower
                    rest ^= w
    # mirror to full symmetry
    for j in range(n):
        rest = conf[j]
        while rest:
            w = rest & -rest
            conf[w.bit_length() - 1] |= 1 << j
            rest ^= w
    return conf


def build_conflict_graph(g: Graph, s: Sequence[VertexId], strong: bool = False) -> Graph:
    """Graph whose proper colorings are exactly the partitions (strongly)
    consistent with ``s``."""
    order = check_ordering(g, s)
    conf = _conflict_masks(g, order, strong)
    edges = []
    for i in range(len(order)):
        rest = conf[i] >> (i + 1)
        j = i + 1
        while rest:
            if rest & 1:
                edges.append((order[i], order[j]))
            rest >>= 1
            j += 1
    return Graph.build(g.vertices, edges)


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    strongly_consistent: bool
    violations: tuple[tuple[VertexId, VertexId, VertexId], ...]


def verify(g: Graph, s: Sequence[VertexId], p: Sequence) -> ConsistencyReport:
    """Check (strong) consistency of ordering ``s`` with partition ``p``.

    Computed through the conflict-graph coloring formulation; violation
    witnesses (at most 10 ordered triples) come from a direct triple scan.
    """
    order = check_ordering(g, s)
    parts = check_partition(g, p)
    part_of = {v: k for k, part in enumerate(parts) for v in part}
    plain = _conflict_masks(g, order, strong=False)
    strong = _conflict_masks(g, order, strong=True)

    def colored_ok(conf: list[int]) -> bool:
        masks: dict[int, int] = {}
        for i, v in enumerate(order):
            masks.setdefault(part_of[v], 0)
            masks[part_of[v]] |= 1 << i
        return all(not (conf[i] & masks[part_of[v]]) for i, v in enumerate(order))

    consistent = colored_ok(plain)
    strongly = consistent and colored_ok(strong)
    violations: list[tuple[VertexId, VertexId, VertexId]] = []
    if not strongly:
        violations = _violation_triples(g, order, part_of, not consistent)
    return ConsistencyReport(consistent, strongly, tuple(violations[:10]))


def _violation_triples(g, order, part_of, plain_failed):
    out = []
    n = len(order)
    for ip in range(n):
        for iq in range(ip + 1, n):
            for ir in range(iq + 1, n):
                p, q, r = order[ip], order[iq], order[ir]
                if plain_failed:
                    bad = part_of[p] == part_of[q] and g.has_edge(p, r) and not g.has_edge(q, r)
                else:
                    bad = part_of[q] == part_of[r] and g.has_edge(p, r) and not g.has_edge(p, q)
                if bad:
                    out.append((p, q, r))
                    if len(out) >= 10:
                        return out
    return out


def verify_precedence(s: Sequence[VertexId], p: Sequence) -> bool:
    """True when every part occupies a contiguous block of ``s``."""
    order = tuple(s)
    parts = [frozenset(part) for part in p]
    if any(not part for part in parts):
        raise ValueError("empty part")
    part_of: dict[VertexId, int] = {}
    for k, part in enumerate(parts):
        for v in part:
            if v in part_of:
                raise ValueError("parts are not disjoint")
            part_of[v] = k
    if set(part_of) != set(order) or len(set(order)) != len(order):
        raise ValueError("partition and ordering have different ground sets")
    seen: list[int] = []
    for v in order:
        k = part_of[v]
        if seen and seen[-1] == k:
            continue
        if k in seen:
            return False
        seen.append(k)
    return True


def greedy_min_precedence_partition(g: Graph, s: Sequence[VertexId], strong: bool = False) -> Partition:
    """Minimum consecutive partition for which ``s`` is precedence
    (strongly) consistent.

    Colors the first vertex 1 and each next vertex with the current color
    unless a conflict-graph neighbor already has it, in which case the next
    color opens.
    """
    order = check_ordering(g, s)
    if not order:
        return ()
    conf = _conflict_masks(g, order, strong)
    parts: list[list[VertexId]] = [[order[0]]]
    block_mask = 1
    for i in range(1, len(order)):
        if conf[i] & block_mask:
            parts.append([order[i]])
            block_mask = 1 << i
        else:
            parts[-1].append(order[i])
            block_mask |= 1 << i
    return tuple(frozenset(p) for p in parts)
