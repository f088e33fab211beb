"""Interval and proper-interval machinery: maximal cliques, canonical
vertex orderings, canonical clique orderings and their interplay."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import (
    Graph,
    Ordering,
    VertexId,
    _BitView,
    check_ordering,
    connected_components,
    induced_subgraph,
)

CliqueSequence = tuple[frozenset[VertexId], ...]


def maximal_cliques(g: Graph) -> CliqueSequence:
    """All inclusion-maximal cliques, sorted by their sorted member lists.

    Plain Bron-Kerbosch with pivoting; inputs are desk scale throughout this
    library so the general enumerator doubles as an oracle on non-interval
    graphs.
    """
    cliques: list[frozenset[VertexId]] = []

    def expand(r: set, p: set, x: set) -> None:
        if not p and not x:
            cliques.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda v: len(g.neighbors(v) & p))
        for v in sorted(p - g.neighbors(pivot)):
            nv = g.neighbors(v)
            expand(r | {v}, p & nv, x & nv)
            p.remove(v)
            x.add(v)

    if g.n:
        expand(set(), set(g.vertices), set())
    return tuple(sorted(cliques, key=lambda c: tuple(sorted(c))))


def is_canonical_ordering(g: Graph, s: Sequence[VertexId]) -> bool:
    """For every triple p<q<r of ``s``: (p,r) an edge forces (q,r) an edge."""
    order = check_ordering(g, s)
    bv = _BitView(g, order)
    for i in range(len(order)):
        before = (1 << i) - 1
        nb = bv.adj[i] & before
        if nb:
            low = (nb & -nb).bit_length() - 1
            if ((before >> low) << low) != nb:
                return False
    return True


def is_proper_canonical_ordering(g: Graph, s: Sequence[VertexId]) -> bool:
    """For every triple p<q<r: (p,r) an edge forces both (p,q) and (q,r)."""
    order = check_ordering(g, s)
    bv = _BitView(g, order)
    n = len(order)
    for i in range(n):
        before = (1 << i) - 1
        nb = bv.adj[i] & before
        if nb:
            low = (nb & -nb).bit_length() - 1
            if ((before >> low) << low) != nb:
                return False
        na = bv.adj[i] >> (i + 1)
        if na & (na + 1):
            return False
    return True


def _clique_positions(sc: CliqueSequence) -> dict[VertexId, list[int]]:
    where: dict[VertexId, list[int]] = {}
    for i, c in enumerate(sc):
        for v in c:
            where.setdefault(v, []).append(i)
    return where


def is_canonical_clique_ordering(g: Graph, sc: Sequence[Iterable[VertexId]]) -> bool:
    """True when ``sc`` lists each maximal clique once with every vertex's
    cliques consecutive."""
    cs = tuple(frozenset(c) for c in sc)
    if sorted(cs, key=lambda c: tuple(sorted(c))) != list(maximal_cliques(g)):
        return False
    for positions in _clique_positions(cs).values():
        if positions[-1] - positions[0] + 1 != len(positions):
            return False
    return True


def ordered_according(g: Graph, s: Sequence[VertexId], sc: Sequence[Iterable[VertexId]]) -> bool:
    """No pair u<v in ``s`` may have indices i<j with v in C_i but not C_j
    while u lies in C_j."""
    order = check_ordering(g, s)
    cs = tuple(frozenset(c) for c in sc)
    if sorted(cs, key=lambda c: tuple(sorted(c))) != list(maximal_cliques(g)):
        raise ValueError("clique sequence does not list the maximal cliques exactly once")
    first = {v: ps[0] for v, ps in _clique_positions(cs).items()}
    # bad(v): vertices whose presence before v in s witnesses a violation.
    bad: dict[VertexId, set[VertexId]] = {v: set() for v in order}
    for v in order:
        for j in range(first[v] + 1, len(cs)):
            if v not in cs[j]:
                bad[v] |= cs[j]
    seen: set[VertexId] = set()
    for v in order:
        if seen & bad[v]:
            return False
        seen.add(v)
    return True


def canonical_from_clique_order(g: Graph, sc: Sequence[Iterable[VertexId]]) -> Ordering:
    """Vertex ordering obtained by repeatedly emitting the simplicial
    vertices of each clique (lexicographic within a batch) and deleting them.

    ``sc`` must be a canonical clique ordering of ``g``.
    """
    cs = tuple(frozenset(c) for c in sc)
    if not is_canonical_clique_ordering(g, cs):
        raise ValueError("not a canonical clique ordering")
    residual = set(g.vertices)
    out: list[VertexId] = []
    for c in cs:
        batch = sorted(v for v in c & residual if _is_simplicial(g, v, residual))
        out.extend(batch)
        residual -= set(batch)
    if residual:
        raise AssertionError("simplicial peel left vertices behind")
    return tuple(out)


def _is_simplicial(g: Graph, v: VertexId, residual: set[VertexId]) -> bool:
    nbrs = sorted(g.neighbors(v) & residual)
    return all(g.has_edge(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:])


def recognize_interval(g: Graph) -> CliqueSequence | None:
    """A canonical clique ordering of ``g``, or None when ``g`` has none.

    The returned sequence is the deterministic frontier of the graph's
    normalized clique tree.
    """
    from .pqtree import build_pqtree

    t = build_pqtree(g)
    return None if t is None else t.clique_sequence()


@dataclass(frozen=True)
class ComponentLayout:
    """Forward-orientation layout of one connected proper-interval component.

    ``key`` maps each vertex to its (first, last) clique positions along the
    component's clique path; equal keys characterize mutual true twins.
    """

    vertices: Ordering
    key: dict[VertexId, tuple[int, int]]
    clique_count: int

    def reversed_key(self, v: VertexId) -> tuple[int, int]:
        f, l = self.key[v]
        return (self.clique_count - 1 - l, self.clique_count - 1 - f)

    def oriented(self, forward: bool) -> Ordering:
        if forward:
            return self.vertices
        return tuple(sorted(self.vertices, key=lambda v: (self.reversed_key(v), v)))

    def twin_groups(self) -> tuple[tuple[VertexId, ...], ...]:
        groups: list[list[VertexId]] = []
        last = None
        for v in self.vertices:
            if self.key[v] != last:
                groups.append([])
                last = self.key[v]
            groups[-1].append(v)
        return tuple(tuple(gp) for gp in groups)


def proper_interval_layout(g: Graph) -> list[ComponentLayout] | None:
    """Per-component layouts when ``g`` is a proper interval graph, else None.

    Components come ordered by their lexicographically smallest vertex.
    """
    from .pqtree import build_pqtree

    layouts = []
    for comp in connected_components(g):
        h = induced_subgraph(g, comp)
        t = build_pqtree(h)
        if t is None:
            return None
        cs = t.clique_sequence()
        key: dict[VertexId, tuple[int, int]] = {}
        for i, c in enumerate(cs):
            for v in c:
                f, _ = key.get(v, (i, i))
                key[v] = (f, i)
        base = tuple(sorted(comp, key=lambda v: (key[v], v)))
        if not is_proper_canonical_ordering(h, base):
            return None
        layouts.append(ComponentLayout(base, key, len(cs)))
    return layouts


def recognize_proper_interval(g: Graph) -> Ordering | None:
    """A proper canonical ordering, or None.

    Deterministic choice: components ordered by smallest vertex, each in the
    lexicographically smaller of its two orientations with true twins in
    lexicographic order.
    """
    layouts = proper_interval_layout(g)
    if layouts is None:
        return None
    out: list[VertexId] = []
    for layout in layouts:
        fwd = layout.oriented(True)
        rev = layout.oriented(False)
        out.extend(min(fwd, rev))
    return tuple(out)
