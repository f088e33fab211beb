"""PQ trees over the maximal cliques of an interval graph.

The tree is a value: annotation and resolution return new trees. Leaves are
clique indices into the tree's deterministic clique list; a P node permits
any permutation of its children, a Q node only the recorded sequence or its
reversal. The family of frontiers over all equivalent trees is exactly the
set of canonical clique orderings of the underlying graph, which is the
contract the test suite checks exhaustively at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .graphs import Graph, VertexId
from .intervals import CliqueSequence, maximal_cliques


@dataclass(frozen=True)
class PrecedenceConstraint:
    """Require ``before`` to precede ``after`` in the vertex ordering."""

    before: VertexId
    after: VertexId

    def __post_init__(self):
        if self.before == self.after:
            raise ValueError("constraint endpoints must differ")


@dataclass(frozen=True)
class PQNode:
    kind: str  # "leaf", "P" or "Q"
    index: int | None = None
    children: tuple["PQNode", ...] = ()
    arcs: frozenset[tuple[int, int]] = frozenset()

    def frontier(self) -> tuple[int, ...]:
        if self.kind == "leaf":
            return (self.index,)
        out: list[int] = []
        for c in self.children:
            out.extend(c.frontier())
        return tuple(out)


@dataclass(frozen=True)
class PQTree:
    root: PQNode | None
    cliques: CliqueSequence

    def frontier(self) -> tuple[int, ...]:
        return () if self.root is None else self.root.frontier()

    def clique_sequence(self) -> CliqueSequence:
        return tuple(self.cliques[i] for i in self.frontier())

    def leaf_count(self) -> int:
        return len(self.cliques)


class IncompatibleConstraints(Exception):
    """Resolution failure: no equivalent tree satisfies the constraint arcs.

    ``path`` addresses the offending node by child indices from the root;
    ``kind`` is "cycle" (P node) or "unorientable" (Q node).
    """

    def __init__(self, path: tuple[int, ...], kind: str, detail: str = ""):
        self.path = path
        self.kind = kind
        where = "tree root" if not path else f"node at path {path}"
        super().__init__(f"{kind} among children of {where}" + (f": {detail}" if detail else ""))


# ---------------------------------------------------------------------------
# Construction


def build_pqtree(g: Graph) -> PQTree | None:
    """PQ tree of ``g``'s maximal cliques, or None when ``g`` is not interval.

    Children are arranged deterministically: P children sorted by frontier,
    Q nodes in the lexicographically smaller of their two orientations.
    """
    cliques = maximal_cliques(g)
    m = len(cliques)
    if m == 0:
        return PQTree(None, ())
    membership: dict[VertexId, frozenset[int]] = {}
    for i, c in enumerate(cliques):
        for v in c:
            membership[v] = membership.get(v, frozenset()) | {i}
    constraints = {s for s in membership.values() if 1 < len(s) < m}
    root = _build_node(frozenset(range(m)), constraints)
    if root is None:
        return None
    root = _normalize(root)
    tree = PQTree(root, cliques)
    fr = tree.frontier()
    pos = {i: p for p, i in enumerate(fr)}
    for s in membership.values():
        ps = sorted(pos[i] for i in s)
        if ps[-1] - ps[0] + 1 != len(ps):
            return None
    return tree


def _build_node(universe: frozenset[int], constraints: set[frozenset[int]]) -> PQNode | None:
    if len(universe) == 1:
        return PQNode("leaf", index=next(iter(universe)))
    live = [c for c in constraints if 1 < len(c) < len(universe)]
    if not live:
        return PQNode("P", children=tuple(PQNode("leaf", index=i) for i in sorted(universe)))

    comps = _overlap_components(live)
    unions = [frozenset().union(*comp) for comp in comps]
    # Unions of distinct overlap components form a laminar family on valid
    # inputs; any violation certifies a consecutivity failure.
    order = sorted(range(len(comps)), key=lambda k: -len(unions[k]))
    maximal: list[int] = []
    for k in order:
        for top in maximal:
            if unions[k] & unions[top]:
                if not unions[k] <= unions[top]:
                    return None
                break
        else:
            maximal.append(k)

    children: list[PQNode] = []
    covered: set[int] = set()
    for top in maximal:
        u_top = unions[top]
        inside = [c for c in live if c <= u_top]
        carrier = set(comps[top])
        if len(carrier) >= 2:
            cells = _place_component(sorted(carrier, key=lambda c: tuple(sorted(c))))
            if cells is None:
                return None
            cell_children = []
            for cell in cells:
                sub = {c for c in inside if c <= cell}
                node = _build_node(cell, sub)
                if node is None:
                    return None
                cell_children.append(node)
            # A constraint under this union that fits no single cell must be
            # a union of consecutive cells (then the Q node satisfies it in
            # both orientations); anything else certifies failure.
            for c in inside:
                if c in carrier or any(c <= cell for cell in cells):
                    continue
                hit = [k for k, cell in enumerate(cells) if cell & c]
                span = set().union(*(cells[k] for k in hit))
                if hit != list(range(hit[0], hit[-1] + 1)) or span != set(c):
                    return None
            children.append(PQNode("Q", children=tuple(cell_children)))
        else:
            sub = {c for c in inside if c < u_top}
            node = _build_node(u_top, sub)
            if node is None:
                return None
            children.append(node)
        covered |= u_top
    for i in sorted(universe - covered):
        children.append(PQNode("leaf", index=i))
    if len(children) == 1:
        return children[0]
    return PQNode("P", children=tuple(children))


def _overlap_components(sets: list[frozenset[int]]) -> list[list[frozenset[int]]]:
    sets = sorted(set(sets), key=lambda c: tuple(sorted(c)))
    parent = list(range(len(sets)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in itertools.combinations(range(len(sets)), 2):
        sa, sb = sets[a], sets[b]
        if sa & sb and not sa <= sb and not sb <= sa:
            parent[find(a)] = find(b)
    groups: dict[int, list[frozenset[int]]] = {}
    for a, s in enumerate(sets):
        groups.setdefault(find(a), []).append(s)
    return list(groups.values())


def _place_component(sets: list[frozenset[int]]) -> list[frozenset[int]] | None:
    """Arrange an overlap-connected family into its forced cell sequence.

    Returns the ordered membership classes (unique up to reversal), or None
    when no consecutive arrangement exists.
    """
    ordered = sorted(sets, key=lambda c: tuple(sorted(c)))
    placed_sets = [ordered[0]]
    pending = ordered[1:]
    cells: list[set[int]] = [set(ordered[0])]
    placed: set[int] = set(ordered[0])
    while pending:
        t = None
        for cand in pending:
            if any(cand & s and not cand <= s and not s <= cand for s in placed_sets):
                t = cand
                break
        if t is None:  # overlap-connected, so this cannot happen
            return None
        pending.remove(t)
        placed_sets.append(t)
        new = t - placed
        touched = [k for k, cell in enumerate(cells) if cell & t]
        i, j = touched[0], touched[-1]
        if touched != list(range(i, j + 1)):
            return None

        def is_full(k: int) -> bool:
            return cells[k] <= t

        if new:
            attach_right = j == len(cells) - 1 and (i == j or all(is_full(k) for k in touched[1:]))
            attach_left = i == 0 and (i == j or all(is_full(k) for k in touched[:-1]))
            if attach_right:
                far = i
                if not is_full(far):
                    cells[far:far + 1] = [cells[far] - t, cells[far] & t]
                cells.append(set(new))
            elif attach_left:
                far = j
                if not is_full(far):
                    cells[far:far + 1] = [cells[far] & t, cells[far] - t]
                cells.insert(0, set(new))
            else:
                return None
            placed |= new
        else:
            if i == j:
                return None
            if not all(is_full(k) for k in touched[1:-1]):
                return None
            if not is_full(j):
                cells[j:j + 1] = [cells[j] & t, cells[j] - t]
            if not is_full(i):
                cells[i:i + 1] = [cells[i] - t, cells[i] & t]
    for s in placed_sets:
        touched = [k for k, cell in enumerate(cells) if cell & s]
        i, j = touched[0], touched[-1]
        if touched != list(range(i, j + 1)) or not all(cells[k] <= s for k in touched):
            return None
    if len(cells) < 3:
        return None
    return [frozenset(c) for c in cells]


def _normalize(node: PQNode) -> PQNode:
    if node.kind == "leaf":
        return node
    kids = tuple(_normalize(c) for c in node.children)
    if node.kind == "P":
        kids = tuple(sorted(kids, key=lambda c: c.frontier()))
        return PQNode("P", children=kids)
    keys = tuple(c.frontier() for c in kids)
    if keys[::-1] < keys:
        kids = kids[::-1]
    return PQNode("Q", children=kids)


# ---------------------------------------------------------------------------
# Frontier enumeration


def enumerate_frontiers(t: PQTree, max_leaves: int = 10, max_count: int = 1_000_000) -> set[CliqueSequence]:
    """Every clique sequence reachable by P-child permutations and Q-child
    reversals. Guarded; intended for desk-scale oracle duty."""
    if t.leaf_count() > max_leaves:
        raise ValueError(f"tree has {t.leaf_count()} leaves, limit is {max_leaves}")
    if t.root is None:
        return {()}
    if _frontier_count(t.root) > max_count:
        raise ValueError("frontier family too large to enumerate")
    return {tuple(t.cliques[i] for i in fr) for fr in _frontiers(t.root)}


def _frontier_count(node: PQNode) -> int:
    if node.kind == "leaf":
        return 1
    total = 1
    for c in node.children:
        total *= _frontier_count(c)
    if node.kind == "P":
        total *= _factorial(len(node.children))
    else:
        total *= 2
    return total


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _frontiers(node: PQNode) -> set[tuple[int, ...]]:
    if node.kind == "leaf":
        return {(node.index,)}
    child_sets = [sorted(_frontiers(c)) for c in node.children]
    out: set[tuple[int, ...]] = set()
    if node.kind == "P":
        arrangements = itertools.permutations(range(len(child_sets)))
    else:
        arrangements = [tuple(range(len(child_sets))), tuple(reversed(range(len(child_sets))))]
    for arrangement in arrangements:
        for pick in itertools.product(*(child_sets[k] for k in arrangement)):
            out.add(tuple(itertools.chain.from_iterable(pick)))
    return out


# ---------------------------------------------------------------------------
# Annotation and resolution


def annotate_constraint(t: PQTree, g: Graph, c: PrecedenceConstraint) -> PQTree:
    """Record the child-order arcs a precedence constraint imposes.

    At each internal node with children X_1..X_k, the arc X_i -> X_j is
    added whenever ``c.before`` occurs under X_i, ``c.after`` does not occur
    under X_i but occurs under X_j. A vertex lying in every leaf of a
    subtree imposes nothing there.
    """
    return annotate_constraints(t, g, [c])


def annotate_constraints(t: PQTree, g: Graph, cs: Iterable[PrecedenceConstraint]) -> PQTree:
    cs = list(cs)
    membership: dict[VertexId, frozenset[int]] = {v: frozenset() for v in g.vertices}
    for i, clique in enumerate(t.cliques):
        for v in clique:
            membership[v] |= {i}
    for c in cs:
        for end in (c.before, c.after):
            if not membership.get(end):
                raise ValueError(f"vertex {end!r} occurs in no leaf of the tree")
    if t.root is None:
        return t
    pairs = [(membership[c.before], membership[c.after]) for c in cs]
    return PQTree(_annotate_node(t.root, pairs), t.cliques)


def _annotate_node(node: PQNode, pairs: list[tuple[frozenset[int], frozenset[int]]]) -> PQNode:
    if node.kind == "leaf":
        return node
    kids = tuple(_annotate_node(c, pairs) for c in node.children)
    leafsets = [frozenset(c.frontier()) for c in kids]
    arcs = set(node.arcs)
    for u_set, v_set in pairs:
        u_in = [bool(u_set & ls) for ls in leafsets]
        v_in = [bool(v_set & ls) for ls in leafsets]
        froms = [i for i in range(len(kids)) if u_in[i] and not v_in[i]]
        tos = [j for j in range(len(kids)) if v_in[j]]
        for i in froms:
            for j in tos:
                arcs.add((i, j))
    return replace(node, children=kids, arcs=frozenset(arcs))


def resolve(t: PQTree) -> PQTree:
    """Rearrange children so every annotated arc is satisfied.

    P children are topologically ordered (ties broken lexicographically on
    the child frontier); Q children are kept or reversed wholesale. Raises
    :class:`IncompatibleConstraints` when no arrangement exists.
    """
    if t.root is None:
        return t
    return PQTree(_resolve_node(t.root, ()), t.cliques)


def _resolve_node(node: PQNode, path: tuple[int, ...]) -> PQNode:
    if node.kind == "leaf":
        return node
    kids = tuple(_resolve_node(c, path + (i,)) for i, c in enumerate(node.children))
    if node.kind == "Q":
        if all(i < j for i, j in node.arcs):
            return PQNode("Q", children=kids)
        if all(i > j for i, j in node.arcs):
            return PQNode("Q", children=kids[::-1])
        raise IncompatibleConstraints(path, "unorientable", f"arcs {sorted(node.arcs)}")
    k = len(kids)
    succ: dict[int, set[int]] = {i: set() for i in range(k)}
    indeg = {i: 0 for i in range(k)}
    for i, j in node.arcs:
        if j not in succ[i]:
            succ[i].add(j)
            indeg[j] += 1
    ready = sorted((i for i in range(k) if indeg[i] == 0), key=lambda i: kids[i].frontier())
    order: list[int] = []
    while ready:
        i = ready.pop(0)
        order.append(i)
        newly = []
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                newly.append(j)
        ready = sorted(ready + newly, key=lambda i: kids[i].frontier())
    if len(order) != k:
        raise IncompatibleConstraints(path, "cycle", f"arcs {sorted(node.arcs)}")
    return PQNode("P", children=tuple(kids[i] for i in order))


# ---------------------------------------------------------------------------
# Debug serialization


def tree_to_sexpr(t: PQTree) -> str:
    """Nested s-expression: leaf ``Ci`` (1-based), ``(P ...)``, ``(Q ...)``."""
    if t.root is None:
        return "()"
    return _sexpr(t.root)


def _sexpr(node: PQNode) -> str:
    if node.kind == "leaf":
        return f"C{node.index + 1}"
    return "(" + node.kind + " " + " ".join(_sexpr(c) for c in node.children) + ")"
