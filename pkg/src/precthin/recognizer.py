"""Recognition of precedence (proper) k-thin graphs for a given partition.

The plain recognizer greedily picks a feasible first part, where feasibility
means the part's clique tree can be rearranged to honor every cross-part
precedence relation and the resulting constraint digraph is acyclic. The
proper recognizers try the k! part permutations; within a part they must
produce a proper canonical block, so on top of tree resolution they orient
each connected component (its layout is rigid up to reversal and true-twin
swaps) and order the components by the cross-component constraints.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import (
    CycleDetected,
    Digraph,
    Graph,
    Ordering,
    Partition,
    VertexId,
    check_partition,
    induced_subgraph,
    topological_sort,
)
from .intervals import (
    ComponentLayout,
    is_canonical_clique_ordering,
    proper_interval_layout,
)
from .pqtree import (
    IncompatibleConstraints,
    PQTree,
    PrecedenceConstraint,
    annotate_constraints,
    build_pqtree,
    resolve,
)


@dataclass(frozen=True)
class Attempt:
    """One probe of a part at a stage (plain) or permutation rank (proper)."""

    stage: int
    part: int
    status: str


@dataclass(frozen=True)
class Certificate:
    answer: str  # "YES" | "NO"
    witness: Ordering | None = None
    part_order: tuple[int, ...] | None = None
    reason: str | None = None
    attempts: tuple[Attempt, ...] = ()

    @property
    def is_yes(self) -> bool:
        return self.answer == "YES"


def precedence_relations(
    g: Graph, vi: Iterable[VertexId], vj: Iterable[VertexId], strong: bool = False
) -> frozenset[tuple[VertexId, VertexId]]:
    """Ordering constraints imposed on the vertices of ``vi`` by part ``vj``.

    With ``strong=False``, ``vi`` is taken to precede ``vj``: whenever some
    witness in ``vj`` is adjacent to v but not to u, u must come before v.
    With ``strong=True``, ``vi`` is taken to succeed ``vj``: whenever some
    witness in ``vj`` is adjacent to x but not to w, x must come before w.
    Both clauses of the strong-ordering requirement are obtained by calling
    this with the roles laid out accordingly.
    """
    a = frozenset(vi)
    b = frozenset(vj)
    if a & b:
        raise ValueError("parts must be disjoint")
    out: set[tuple[VertexId, VertexId]] = set()
    for w in b:
        adjacent = g.neighbors(w) & a
        if not adjacent:
            continue
        rest = a - adjacent
        if not rest:
            continue
        if strong:
            out.update((x, y) for x in adjacent for y in rest)
        else:
            out.update((x, y) for x in rest for y in adjacent)
    return frozenset(out)


def add_edges_from_pqtree(g: Graph, d: Digraph, t: PQTree) -> Digraph:
    """Walk the tree's clique sequence, arcing each batch of currently
    simplicial vertices to the whole next clique, then deleting the batch."""
    return _add_edges_from_clique_order(g, d, t.clique_sequence())


def _add_edges_from_clique_order(g: Graph, d: Digraph, sc: Sequence[frozenset[VertexId]]) -> Digraph:
    if not is_canonical_clique_ordering(g, sc):
        raise ValueError("frontier is not a canonical clique ordering of the graph")
    residual = set(g.vertices)
    arcs: list[tuple[VertexId, VertexId]] = []
    for i, clique in enumerate(sc):
        batch = []
        for v in clique & residual:
            nbrs = g.neighbors(v) & residual
            if all(g.has_edge(x, y) for x, y in itertools.combinations(nbrs, 2)):
                batch.append(v)
        if i + 1 < len(sc):
            for v in batch:
                for u in sc[i + 1]:
                    arcs.append((v, u))
        residual.difference_update(batch)
    if residual:
        raise AssertionError("simplicial peel left vertices behind")
    return d.with_arcs(arcs)


# ---------------------------------------------------------------------------
# Plain precedence thinness (greedy first-part algorithm)


@dataclass(frozen=True)
class FirstPartProbe:
    ordering: Ordering | None
    status: str  # "OK" or a failure reason


def probe_first_part(
    g: Graph,
    p: Sequence,
    index: int,
    others: Sequence[int] | None = None,
    _cache: dict | None = None,
) -> FirstPartProbe:
    """Can part ``index`` precede the parts in ``others``?

    Returns the part's vertex ordering when feasible, otherwise the failing
    stage (PQ_INCOMPATIBLE or CYCLE_IN_D).
    """
    parts = check_partition(g, p)
    if others is None:
        others = [j for j in range(len(parts)) if j != index]
    cache = _cache if _cache is not None else {}
    gi, tree = _part_tree(g, parts, index, cache)
    if tree is None:
        return FirstPartProbe(None, f"NON_INTERVAL_PART: part {index} does not induce an interval graph")
    relations: set[tuple[VertexId, VertexId]] = set()
    for j in others:
        relations |= precedence_relations(g, parts[index], parts[j], strong=False)
    constraints = [PrecedenceConstraint(u, v) for u, v in sorted(relations)]
    try:
        resolved = resolve(annotate_constraints(tree, gi, constraints))
    except IncompatibleConstraints as exc:
        return FirstPartProbe(None, f"PQ_INCOMPATIBLE: {exc}")
    d = Digraph.build(sorted(parts[index]), sorted(relations))
    d = add_edges_from_pqtree(gi, d, resolved)
    try:
        ordering = topological_sort(d)
    except CycleDetected as exc:
        return FirstPartProbe(None, f"CYCLE_IN_D: {exc}")
    return FirstPartProbe(ordering, "OK")


def _part_tree(g: Graph, parts: Partition, index: int, cache: dict):
    key = ("tree", index)
    if key not in cache:
        gi = induced_subgraph(g, parts[index])
        cache[key] = (gi, build_pqtree(gi))
    return cache[key]


def recognize_precedence_thin(g: Graph, p: Sequence) -> Certificate:
    """Partitioned precedence-thin recognition (greedy first-part search)."""
    parts = check_partition(g, p)
    cache: dict = {}
    for i in range(len(parts)):
        _, tree = _part_tree(g, parts, i, cache)
        if tree is None:
            return Certificate(
                "NO", reason=f"NON_INTERVAL_PART: part {i} does not induce an interval graph"
            )
    remaining = list(range(len(parts)))
    attempts: list[Attempt] = []
    chunks: list[Ordering] = []
    chosen: list[int] = []
    stage = 1
    while remaining:
        found = False
        stage_failures: list[str] = []
        for idx in remaining:
            others = [j for j in remaining if j != idx]
            probe = probe_first_part(g, parts, idx, others, _cache=cache)
            attempts.append(Attempt(stage, idx, probe.status))
            if probe.ordering is not None:
                chunks.append(probe.ordering)
                chosen.append(idx)
                remaining.remove(idx)
                found = True
                break
            stage_failures.append(f"part {idx}: {probe.status}")
        if not found:
            return Certificate(
                "NO",
                reason=f"NO_FEASIBLE_PERMUTATION: at stage {stage} no remaining part can come first ("
                + "; ".join(stage_failures)
                + ")",
                attempts=tuple(attempts),
            )
        stage += 1
    witness = tuple(v for chunk in chunks for v in chunk)
    return Certificate("YES", witness, tuple(chosen), None, tuple(attempts))


# ---------------------------------------------------------------------------
# Proper variants


def _strong_relations(
    g: Graph, parts: Partition, perm: Sequence[int], pos: int
) -> frozenset[tuple[VertexId, VertexId]]:
    vi = parts[perm[pos]]
    out: set[tuple[VertexId, VertexId]] = set()
    for q in range(len(perm)):
        if q == pos:
            continue
        out |= precedence_relations(g, vi, parts[perm[q]], strong=q < pos)
    return frozenset(out)


def _order_part_strong(
    gi: Graph,
    layouts: list[ComponentLayout],
    relations: frozenset[tuple[VertexId, VertexId]],
) -> tuple[Ordering | None, str]:
    """A proper canonical ordering of ``gi`` satisfying ``relations``.

    Every proper canonical ordering concatenates the components in some
    order, each fixed up to reversal and true-twin permutation, so the
    constraints reduce to component precedences, per-component orientation
    demands, and arcs inside twin groups.
    """
    comp_of: dict[VertexId, int] = {}
    for ci, layout in enumerate(layouts):
        for v in layout.vertices:
            comp_of[v] = ci
    votes: list[set[str]] = [set() for _ in layouts]
    comp_arcs: set[tuple[int, int]] = set()
    twin_arcs: set[tuple[VertexId, VertexId]] = set()
    for a, b in relations:
        ca, cb = comp_of[a], comp_of[b]
        if ca != cb:
            comp_arcs.add((ca, cb))
            continue
        ka, kb = layouts[ca].key[a], layouts[ca].key[b]
        if ka == kb:
            twin_arcs.add((a, b))
        elif ka < kb:
            votes[ca].add("forward")
        else:
            votes[ca].add("reversed")
    for ci, vote in enumerate(votes):
        if len(vote) == 2:
            return None, (
                "PQ_INCOMPATIBLE: constraints demand both orientations of the "
                f"component containing {layouts[ci].vertices[0]!r}"
            )
    comp_order = _int_topological_order(len(layouts), comp_arcs)
    if comp_order is None:
        return None, "CYCLE_IN_D: component precedence cycle"
    out: list[VertexId] = []
    for ci in comp_order:
        layout = layouts[ci]
        vote = votes[ci]
        if vote:
            forward = "forward" in vote
        else:
            forward = layout.oriented(True) <= layout.oriented(False)
        groups = layout.twin_groups()
        if not forward:
            groups = tuple(reversed(groups))
        for group in groups:
            members = set(group)
            arcs = [(a, b) for a, b in twin_arcs if a in members and b in members]
            try:
                out.extend(topological_sort(Digraph.build(sorted(members), arcs)))
            except CycleDetected as exc:
                return None, f"CYCLE_IN_D: contradictory constraints among true twins ({exc})"
    return tuple(out), "OK"


def _int_topological_order(n: int, arcs: set[tuple[int, int]]) -> list[int] | None:
    succ: dict[int, set[int]] = {i: set() for i in range(n)}
    indeg = [0] * n
    for a, b in arcs:
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    heap = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    out: list[int] = []
    while heap:
        i = heapq.heappop(heap)
        out.append(i)
        for j in sorted(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, j)
    return out if len(out) == n else None


def _proper_layouts(g: Graph, parts: Partition, cache: dict):
    key = "layouts"
    if key not in cache:
        all_layouts = []
        for i in range(len(parts)):
            gi = induced_subgraph(g, parts[i])
            all_layouts.append((gi, proper_interval_layout(gi)))
        cache[key] = all_layouts
    return cache[key]


def recognize_precedence_proper_thin_fixed_k(g: Graph, p: Sequence) -> Certificate:
    """Partitioned precedence-proper-thin recognition for small fixed k.

    Tries every part permutation; a part placed at a position must admit a
    proper canonical ordering compatible with the constraints imposed by the
    parts on both sides. The part's clique tree is annotated and resolved
    first; orientation and component arrangement decide the rest.
    """
    parts = check_partition(g, p)
    k = len(parts)
    if k > 8:
        raise ValueError(f"part count {k} exceeds the fixed-k guard of 8")
    cache: dict = {}
    per_part = _proper_layouts(g, parts, cache)
    for i, (_, layouts) in enumerate(per_part):
        if layouts is None:
            return Certificate(
                "NO", reason=f"NON_INTERVAL_PART: part {i} does not induce a proper interval graph"
            )
    trees = [build_pqtree(gi) for gi, _ in per_part]
    attempts: list[Attempt] = []
    for rank, perm in enumerate(itertools.permutations(range(k)), start=1):
        ok = True
        chunks: list[Ordering] = []
        for pos, idx in enumerate(perm):
            gi, layouts = per_part[idx]
            relations = _strong_relations(g, parts, perm, pos)
            constraints = [PrecedenceConstraint(u, v) for u, v in sorted(relations)]
            try:
                resolve(annotate_constraints(trees[idx], gi, constraints))
            except IncompatibleConstraints as exc:
                attempts.append(Attempt(rank, idx, f"PQ_INCOMPATIBLE: {exc}"))
                ok = False
                break
            ordering, status = _order_part_strong(gi, layouts, relations)
            if ordering is None:
                attempts.append(Attempt(rank, idx, status))
                ok = False
                break
            attempts.append(Attempt(rank, idx, "OK"))
            chunks.append(ordering)
        if ok:
            witness = tuple(v for chunk in chunks for v in chunk)
            return Certificate("YES", witness, tuple(perm), None, tuple(attempts))
    return Certificate(
        "NO",
        reason="NO_FEASIBLE_PERMUTATION: no part permutation admits a precedence strongly consistent ordering",
        attempts=tuple(attempts),
    )


def recognize_precedence_proper_thin_connected(g: Graph, p: Sequence) -> Certificate:
    """Proper recognition when every part induces a connected subgraph.

    Each part's layout is rigid up to reversal, so the per-part test reduces
    to checking the two orientations directly; no tree annotation is needed.
    """
    parts = check_partition(g, p)
    k = len(parts)
    if k > 8:
        raise ValueError(f"part count {k} exceeds the fixed-k guard of 8")
    cache: dict = {}
    per_part = _proper_layouts(g, parts, cache)
    for i, (gi, layouts) in enumerate(per_part):
        if layouts is not None and len(layouts) > 1:
            raise ValueError(f"part {i} induces a disconnected subgraph")
        if gi.n == 0:
            raise ValueError("empty part")
    for i, (_, layouts) in enumerate(per_part):
        if layouts is None:
            return Certificate(
                "NO", reason=f"NON_INTERVAL_PART: part {i} does not induce a proper interval graph"
            )
    attempts: list[Attempt] = []
    for rank, perm in enumerate(itertools.permutations(range(k)), start=1):
        ok = True
        chunks: list[Ordering] = []
        for pos, idx in enumerate(perm):
            gi, layouts = per_part[idx]
            relations = _strong_relations(g, parts, perm, pos)
            ordering, status = _order_part_strong(gi, layouts, relations)
            if ordering is None:
                attempts.append(Attempt(rank, idx, status))
                ok = False
                break
            attempts.append(Attempt(rank, idx, "OK"))
            chunks.append(ordering)
        if ok:
            witness = tuple(v for chunk in chunks for v in chunk)
            return Certificate("YES", witness, tuple(perm), None, tuple(attempts))
    return Certificate(
        "NO",
        reason="NO_FEASIBLE_PERMUTATION: no part permutation admits a precedence strongly consistent ordering",
        attempts=tuple(attempts),
    )
