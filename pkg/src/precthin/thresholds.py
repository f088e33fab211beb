"""Threshold-graph characterization of precedence-thin concatenations.

The split completion of a bipartition turns one side into a clique and the
other into a stable set while keeping the cross edges. Two side orderings
are "in accordance" when the clique side's closed neighborhoods are nested
along it; this is equivalent to their concatenation being a precedence
consistent ordering, pairwise for every pair of parts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import Graph, VertexId, check_partition, induced_subgraph
from .intervals import is_canonical_ordering, is_proper_canonical_ordering

CLIQUE = "CLIQUE"
STABLE = "STABLE"


@dataclass(frozen=True)
class SplitCompletion:
    graph: Graph
    clique_side: frozenset[VertexId]
    stable_side: frozenset[VertexId]


def split_completion(g: Graph, v1: Iterable[VertexId], v2: Iterable[VertexId]) -> SplitCompletion:
    """Complete ``v1`` into a clique, empty ``v2`` into a stable set, keep
    the cross edges."""
    a = frozenset(v1)
    b = frozenset(v2)
    if a & b or (a | b) != set(g.vertices):
        raise ValueError("(v1, v2) must bipartition the vertex set")
    edges = [(u, v) for u, v in itertools.combinations(sorted(a), 2)]
    edges += [tuple(sorted(e)) for e in g.edges if len(e & a) == 1]
    return SplitCompletion(Graph.build(g.vertices, edges), a, b)


def is_threshold_ordering(s: SplitCompletion, side: str, o: Sequence[VertexId]) -> bool:
    """Neighborhoods nested by inclusion along ``o``: closed on the clique
    side, open on the stable side."""
    if side not in (CLIQUE, STABLE):
        raise ValueError(f"side must be {CLIQUE} or {STABLE}")
    ground = s.clique_side if side == CLIQUE else s.stable_side
    order = tuple(o)
    if set(order) != ground or len(order) != len(ground):
        raise ValueError("ordering must permute the chosen side")
    g = s.graph
    for u, v in zip(order, order[1:]):
        if side == CLIQUE:
            if not g.closed_neighbors(u) <= g.closed_neighbors(v):
                return False
        else:
            if not g.neighbors(u) <= g.neighbors(v):
                return False
    return True


def in_accordance(g: Graph, s1: Sequence[VertexId], s2: Sequence[VertexId]) -> bool:
    """True when s1 is a clique-side threshold ordering of the split
    completion and both sides are canonical orderings of their subgraphs."""
    a, b = _bipartition(g, s1, s2)
    if not is_canonical_ordering(induced_subgraph(g, a), s1):
        return False
    if not is_canonical_ordering(induced_subgraph(g, b), s2):
        return False
    sc = split_completion(g, a, b)
    return is_threshold_ordering(sc, CLIQUE, s1)


def strongly_in_accordance(g: Graph, s1: Sequence[VertexId], s2: Sequence[VertexId]) -> bool:
    """Both sides proper canonical; s1 and the reversal of s2 are threshold
    orderings of the split completion."""
    a, b = _bipartition(g, s1, s2)
    if not is_proper_canonical_ordering(induced_subgraph(g, a), s1):
        return False
    if not is_proper_canonical_ordering(induced_subgraph(g, b), s2):
        return False
    sc = split_completion(g, a, b)
    return is_threshold_ordering(sc, CLIQUE, s1) and is_threshold_ordering(
        sc, STABLE, tuple(reversed(tuple(s2)))
    )


def _bipartition(g, s1, s2):
    a = frozenset(s1)
    b = frozenset(s2)
    if len(a) != len(tuple(s1)) or len(b) != len(tuple(s2)):
        raise ValueError("side orderings must not repeat vertices")
    if a & b or (a | b) != set(g.vertices):
        raise ValueError("(V(s1), V(s2)) must bipartition the vertex set")
    return a, b


def check_characterization(g: Graph, s: Sequence[VertexId], p: Sequence, strong: bool = False) -> bool:
    """Pairwise accordance of the blocks of ``s``, in block order, on the
    induced two-part subgraphs."""
    parts = check_partition(g, p)
    order = tuple(s)
    blocks = _blocks(order, parts)
    if blocks is None:
        raise ValueError("ordering does not list the parts consecutively")
    if len(blocks) == 1:
        h = induced_subgraph(g, set(order))
        return is_proper_canonical_ordering(h, order) if strong else is_canonical_ordering(h, order)
    pred = strongly_in_accordance if strong else in_accordance
    for i, j in itertools.combinations(range(len(blocks)), 2):
        si, sj = blocks[i], blocks[j]
        h = induced_subgraph(g, set(si) | set(sj))
        if not pred(h, si, sj):
            return False
    return True


def _blocks(order, parts):
    part_of = {v: k for k, part in enumerate(parts) for v in part}
    blocks: list[list[VertexId]] = []
    seen: list[int] = []
    for v in order:
        k = part_of[v]
        if seen and seen[-1] == k:
            blocks[-1].append(v)
            continue
        if k in seen:
            return None
        seen.append(k)
        blocks.append([v])
    return [tuple(b) for b in blocks]
