"""Brute-force ground truth for the recognizers and the precedence
thinness parameters, usable only at desk scale."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .graphs import Graph, check_partition
from .consistency import _conflict_masks
from .recognizer import Certificate


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 10
    max_parts: int = 8
    max_states: int = 10**8

    def __post_init__(self):
        if min(self.max_vertices, self.max_parts, self.max_states) <= 0:
            raise ValueError("budget fields must be positive")


def brute_force_partitioned(
    g: Graph, p: Sequence, strong: bool, budget: OracleBudget | None = None
) -> Certificate:
    """Backtracking search over part-consecutive orderings.

    Extends one vertex at a time in lexicographic candidate order, pruning a
    prefix as soon as a triple violates the (strong) consistency condition
    or a started part would be abandoned. The first completion is therefore
    the lexicographically smallest feasible witness.
    """
    budget = budget or OracleBudget()
    parts = check_partition(g, p)
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceed budget {budget.max_vertices}")
    if len(parts) > budget.max_parts:
        raise BudgetExceeded(f"{len(parts)} parts exceed budget {budget.max_parts}")

    names = sorted(g.vertices)
    vid = {v: i for i, v in enumerate(names)}
    adj = [0] * len(names)
    for e in g.edges:
        u, v = tuple(e)
        adj[vid[u]] |= 1 << vid[v]
        adj[vid[v]] |= 1 << vid[u]
    part_of = [0] * len(names)
    part_members: list[list[int]] = []
    for k, part in enumerate(parts):
        ids = sorted(vid[v] for v in part)
        part_members.append(ids)
        for i in ids:
            part_of[i] = k

    n = g.n
    placed: list[int] = []
    prefix: list[int] = [0]  # prefix[t] = vertex mask of placed[0:t]
    # nbr_pos[v]: position mask of placed neighbors of v
    nbr_pos = [0] * n
    nbr_ids = [[vid[u] for u in g.neighbors(names[i])] for i in range(n)]
    # part blocks are consecutive: (part id, start position) per block
    blocks: list[tuple[int, int]] = []
    states = 0

    def extend_ok(r: int) -> bool:
        npm = nbr_pos[r]
        now = len(placed)
        # plain: within one part's block, a neighbor of r placed before a
        # non-neighbor of r
        for bi, (k, start) in enumerate(blocks):
            end = blocks[bi + 1][1] if bi + 1 < len(blocks) else now
            width = end - start
            full = (1 << width) - 1
            nb = (npm >> start) & full
            if nb:
                low = nb & -nb
                if full & ~(low | (low - 1)) & ~nb:
                    return False
        if strong and blocks and part_of[r] == blocks[-1][0]:
            # q ranges over the open block; p over everything before q
            nr = adj[r]
            for t in range(blocks[-1][1], now):
                if prefix[t] & nr & ~adj[placed[t]]:
                    return False
        return True

    def candidates() -> list[int]:
        done = prefix[len(placed)]
        if blocks:
            k = blocks[-1][0]
            left = [i for i in part_members[k] if not (done >> i & 1)]
            if left:
                return left
        started = {k for k, _ in blocks}
        return [i for i in range(n) if not (done >> i & 1) and part_of[i] not in started]

    def dooms_unplaced(r: int, pos: int, start: int) -> bool:
        # Violations against placed material are permanent, so an unplaced
        # vertex that already conflicts can never be appended later.
        nr = adj[r]
        before_in_block = ((1 << pos) - 1) & ~((1 << start) - 1)
        done = prefix[-1]
        pk = part_of[r]
        pfx = prefix[-2]
        for u in range(n):
            if done >> u & 1:
                continue
            if not (nr >> u & 1) and nbr_pos[u] & before_in_block:
                return True
            if strong and part_of[u] == pk and pfx & adj[u] & ~nr:
                return True
        return False

    def search() -> bool:
        nonlocal states
        if len(placed) == n:
            return True
        for r in candidates():
            states += 1
            if states > budget.max_states:
                raise BudgetExceeded(f"search exceeded {budget.max_states} states")
            if extend_ok(r):
                pos = len(placed)
                opened = not blocks or part_of[r] != blocks[-1][0]
                if opened:
                    blocks.append((part_of[r], pos))
                placed.append(r)
                prefix.append(prefix[-1] | (1 << r))
                bit = 1 << pos
                for u in nbr_ids[r]:
                    nbr_pos[u] |= bit
                if not dooms_unplaced(r, pos, blocks[-1][1]) and search():
                    return True
                for u in nbr_ids[r]:
                    nbr_pos[u] &= ~bit
                placed.pop()
                prefix.pop()
                if opened:
                    blocks.pop()
        return False

    if search():
        order: list[int] = []
        for v in placed:
            if not order or order[-1] != part_of[v]:
                order.append(part_of[v])
        return Certificate("YES", tuple(names[i] for i in placed), tuple(order))
    word = "strongly consistent" if strong else "consistent"
    return Certificate("NO", reason=f"exhaustive search: no precedence {word} ordering exists")


def brute_force_precedence_thinness(
    g: Graph, strong: bool, budget: OracleBudget | None = None
) -> int:
    """Minimum part count over all orderings of the greedy consecutive
    partition; the plain flag yields the precedence thinness, the strong
    flag its proper counterpart."""
    budget = budget or OracleBudget(max_vertices=8)
    if g.n > min(budget.max_vertices, 8):
        raise BudgetExceeded(f"{g.n} vertices exceed the n<=8 guard")
    if g.n == 0:
        return 0
    best = g.n + 1
    for order in itertools.permutations(sorted(g.vertices)):
        conf = _conflict_masks(g, order, strong)
        count = 1
        block = 1
        for i in range(1, g.n):
            if conf[i] & block:
                count += 1
                block = 1 << i
                if count >= best:
                    break
            else:
                block |= 1 << i
        best = min(best, count)
        if best == 1:
            break
    return best
