"""Shared fixtures: graph corpora, instance generators, and definitional
oracles (straight triple scans) the implementation is checked against."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import networkx as nx

from precthin import Graph, maximal_cliques


def names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"v{i:02d}" for i in range(n)]


def from_networkx(nxg) -> Graph:
    mapping = {node: name for node, name in zip(sorted(nxg.nodes), names(nxg.number_of_nodes()))}
    return Graph.build(
        [mapping[v] for v in sorted(nxg.nodes)],
        [(mapping[u], mapping[v]) for u, v in nxg.edges],
    )


@lru_cache(maxsize=None)
def atlas_graphs(max_n: int, min_n: int = 1) -> tuple[Graph, ...]:
    """All graphs with min_n..max_n vertices, one per isomorphism class."""
    out = []
    for nxg in nx.graph_atlas_g():
        if min_n <= nxg.number_of_nodes() <= max_n:
            out.append(from_networkx(nxg))
    return tuple(out)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    vs = names(n)
    edges = [(u, v) for u, v in itertools.combinations(vs, 2) if rng.random() < p]
    return Graph.build(vs, edges)


def random_partition(rng: random.Random, vertices, k: int):
    vs = list(vertices)
    rng.shuffle(vs)
    cuts = sorted(rng.sample(range(1, len(vs)), k - 1)) if k > 1 else []
    parts = []
    prev = 0
    for cut in cuts + [len(vs)]:
        parts.append(frozenset(vs[prev:cut]))
        prev = cut
    return tuple(parts)


def set_partitions(items, max_parts: int):
    """All partitions of ``items`` into at most ``max_parts`` parts."""
    items = list(items)

    def rec(i, parts):
        if i == len(items):
            yield tuple(frozenset(p) for p in parts)
            return
        for p in parts:
            p.append(items[i])
            yield from rec(i + 1, parts)
            p.pop()
        if len(parts) < max_parts:
            parts.append([items[i]])
            yield from rec(i + 1, parts)
            parts.pop()

    if not items:
        yield ()
        return
    yield from rec(0, [])


def ordered_bipartitions(items):
    """All ordered pairs (A, B) of nonempty complementary subsets."""
    items = list(items)
    for r in range(1, len(items)):
        for left in itertools.combinations(items, r):
            right = tuple(v for v in items if v not in left)
            yield frozenset(left), frozenset(right)


def compositions(order):
    """All partitions of an ordered tuple into consecutive blocks."""
    order = tuple(order)
    n = len(order)
    for mask in range(1 << max(n - 1, 0)):
        parts = []
        start = 0
        for i in range(n - 1):
            if mask >> i & 1:
                parts.append(frozenset(order[start:i + 1]))
                start = i + 1
        parts.append(frozenset(order[start:]))
        yield tuple(parts)


# ---------------------------------------------------------------------------
# Definitional oracles (independent of the library's fast paths)


def def_canonical(g: Graph, s) -> bool:
    s = tuple(s)
    for p, q, r in itertools.combinations(s, 3):
        if g.has_edge(p, r) and not g.has_edge(q, r):
            return False
    return True


def def_proper_canonical(g: Graph, s) -> bool:
    s = tuple(s)
    for p, q, r in itertools.combinations(s, 3):
        if g.has_edge(p, r) and (not g.has_edge(p, q) or not g.has_edge(q, r)):
            return False
    return True


def def_consistent(g: Graph, s, parts) -> bool:
    part_of = {v: k for k, part in enumerate(parts) for v in part}
    for p, q, r in itertools.combinations(tuple(s), 3):
        if part_of[p] == part_of[q] and g.has_edge(p, r) and not g.has_edge(q, r):
            return False
    return True


def def_strongly_consistent(g: Graph, s, parts) -> bool:
    if not def_consistent(g, s, parts):
        return False
    part_of = {v: k for k, part in enumerate(parts) for v in part}
    for p, q, r in itertools.combinations(tuple(s), 3):
        if part_of[q] == part_of[r] and g.has_edge(p, r) and not g.has_edge(p, q):
            return False
    return True


def def_conflict_edges(g: Graph, s, strong: bool):
    s = tuple(s)
    pos = {v: i for i, v in enumerate(s)}
    edges = set()
    for v, w in itertools.combinations(s, 2):
        hit = any(
            pos[z] > pos[w] and g.has_edge(z, v) and not g.has_edge(z, w) for z in s
        )
        if strong and not hit:
            hit = any(
                pos[x] < pos[v] and g.has_edge(x, w) and not g.has_edge(x, v) for x in s
            )
        if hit:
            edges.add(frozenset((v, w)))
    return edges


def valid_clique_orderings(g: Graph, first_only: bool = False):
    """Backtracking enumeration of clique permutations in which every
    vertex's cliques stay consecutive: a clique may never revisit a vertex
    whose run has already closed."""
    cliques = maximal_cliques(g)
    m = len(cliques)
    out = []
    prefix: list = []
    used = [False] * m
    closed: set = set()
    opened: set = set()

    def rec():
        if len(prefix) == m:
            out.append(tuple(prefix))
            return first_only
        for i in range(m):
            if used[i]:
                continue
            c = cliques[i]
            if c & closed:
                continue
            newly_closed = {v for v in opened - c}
            used[i] = True
            prefix.append(c)
            opened_before = set(opened)
            opened.update(c)
            closed.update(newly_closed)
            opened.difference_update(newly_closed)
            stop = rec()
            used[i] = False
            prefix.pop()
            closed.difference_update(newly_closed)
            opened.clear()
            opened.update(opened_before)
            if stop:
                return True
        return False

    rec()
    return out


def is_interval_bruteforce(g: Graph) -> bool:
    if len(maximal_cliques(g)) <= 2:
        return True
    return bool(valid_clique_orderings(g, first_only=True))


def part_consecutive_orderings(g: Graph, parts):
    """Every ordering listing each part as one contiguous block."""
    for perm in itertools.permutations(range(len(parts))):
        pools = [sorted(parts[k]) for k in perm]
        for arrangement in itertools.product(*(itertools.permutations(p) for p in pools)):
            yield tuple(v for block in arrangement for v in block)


# ---------------------------------------------------------------------------
# Named fixtures


def path_graph(*vs) -> Graph:
    return Graph.build(sorted(vs), list(zip(vs, vs[1:])))


def cycle4() -> Graph:
    return Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])


def claw() -> Graph:
    return Graph.from_edges([("c", "x"), ("c", "y"), ("c", "z")])


def eight_clique_graph(suffix: str = "") -> Graph:
    """Union of eight overlapping cliques on twelve vertices; its clique
    tree mixes P and Q nodes."""
    blocks = ["abc", "cd", "dl", "el", "fgl", "gjl", "hijl", "ijkl"]
    edges = set()
    for block in blocks:
        for u, v in itertools.combinations(block, 2):
            edges.add((u + suffix, v + suffix))
    vertices = sorted({ch + suffix for ch in "abcdefghijkl"})
    return Graph.build(vertices, sorted(edges))


def three_part_instance():
    """Three copies of the eight-clique graph with cross edges that force
    one feasible part order."""
    p1 = eight_clique_graph("")
    p2 = eight_clique_graph("'")
    p3 = eight_clique_graph("''")
    cross = [("a", x + "'") for x in "abcd"] + [("f", x + "''") for x in "abcd"]
    vertices = sorted(set(p1.vertices) | set(p2.vertices) | set(p3.vertices))
    edges = list(p1.edge_list()) + list(p2.edge_list()) + list(p3.edge_list()) + cross
    g = Graph.build(vertices, edges)
    parts = (
        frozenset(p1.vertices),
        frozenset(p2.vertices),
        frozenset(p3.vertices),
    )
    return g, parts


def random_connected_unit_interval(rng: random.Random, n: int, prefix: str) -> Graph:
    """Connected proper interval graph from a random unit-interval layout."""
    xs = [0.0]
    for _ in range(n - 1):
        xs.append(xs[-1] + rng.uniform(0.25, 0.95))
    vs = [f"{prefix}{i:02d}" for i in range(n)]
    edges = [
        (vs[i], vs[j])
        for i in range(n)
        for j in range(i + 1, n)
        if xs[j] - xs[i] < 1.0
    ]
    return Graph.build(vs, edges)
