"""Not-all-equal 3-SAT instance gadgetry.

A formula maps to a graph plus a partition into parts of size at most two:
one two-vertex part per (variable, clause) incidence, two singleton terminal
parts per variable, and three two-vertex parts per clause wired by a fixed
15-edge pattern. Orderings of the instance that are precedence strongly
consistent correspond exactly to not-all-equal satisfying assignments, with
the variable value read off the relative order of its two terminals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .graphs import Graph, Ordering, Partition, VertexId

Literal = int  # nonzero; sign is polarity, magnitude a 1-based variable index


@dataclass(frozen=True)
class NAEFormula:
    variable_count: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        if self.variable_count < 1:
            raise ValueError("formula needs at least one variable")
        for ci, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise ValueError(f"clause {ci + 1} must have exactly three literals")
            seen = set()
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise ValueError(f"clause {ci + 1}: literal {lit} out of range")
                if abs(lit) in seen:
                    raise ValueError(f"clause {ci + 1} repeats variable {abs(lit)}")
                seen.add(abs(lit))


@dataclass(frozen=True)
class ReductionInstance:
    graph: Graph
    partition: Partition
    part_roles: tuple[str, ...]
    formula: NAEFormula


def _terminal(i: int, value: str) -> VertexId:
    return f"x{i}{value}"


def _incidence(i: int, j: int, value: str) -> VertexId:
    return f"x{i}c{j}{value}"


def _ynode(k: int, j: int, slot: int) -> VertexId:
    return f"y{k}c{j}_{slot}"


def _ordered_incidence_pair(lit: Literal, j: int) -> tuple[VertexId, VertexId]:
    """The incidence part as an ordered pair following literal polarity."""
    i = abs(lit)
    if lit > 0:
        return (_incidence(i, j, "F"), _incidence(i, j, "T"))
    return (_incidence(i, j, "T"), _incidence(i, j, "F"))


# Per-clause gadget wiring between the ordered incidence pairs O1..O3 and the
# clause parts Y1..Y3; entries are ((k, slot), (y, slot)) with 1-based slots.
_GADGET_EDGES = (
    ((1, 2), (1, 1)),
    ((1, 1), (2, 1)),
    ((1, 2), (2, 1)),
    ((2, 1), (1, 2)),
    ((2, 1), (1, 1)),
    ((2, 2), (2, 1)),
    ((2, 2), (2, 2)),
    ((2, 1), (3, 1)),
    ((2, 1), (3, 2)),
    ((3, 1), (1, 2)),
    ((3, 2), (1, 2)),
    ((3, 1), (2, 2)),
    ((3, 2), (2, 2)),
    ((3, 2), (3, 1)),
    ((3, 2), (3, 2)),
)


def reduce_formula(f: NAEFormula) -> ReductionInstance:
    """Build the partitioned instance whose strongly consistent precedence
    orderings encode the formula's not-all-equal satisfying assignments."""
    parts: list[frozenset[VertexId]] = []
    roles: list[str] = []
    edges: list[tuple[VertexId, VertexId]] = []
    for i in range(1, f.variable_count + 1):
        parts.append(frozenset({_terminal(i, "T")}))
        roles.append(f"XT_{i}")
        parts.append(frozenset({_terminal(i, "F")}))
        roles.append(f"XF_{i}")
    for j, clause in enumerate(f.clauses, start=1):
        pairs = [_ordered_incidence_pair(lit, j) for lit in clause]
        for lit in clause:
            i = abs(lit)
            parts.append(frozenset({_incidence(i, j, "T"), _incidence(i, j, "F")}))
            roles.append(f"X_{i}_{j}")
            edges.append((_terminal(i, "T"), _incidence(i, j, "T")))
            edges.append((_terminal(i, "F"), _incidence(i, j, "F")))
        ys = {k: (_ynode(k, j, 1), _ynode(k, j, 2)) for k in (1, 2, 3)}
        for k in (1, 2, 3):
            parts.append(frozenset(ys[k]))
            roles.append(f"Y_{k}_{j}")
        for (ok, oslot), (yk, yslot) in _GADGET_EDGES:
            edges.append((pairs[ok - 1][oslot - 1], ys[yk][yslot - 1]))
    vertices = sorted({v for part in parts for v in part})
    graph = Graph.build(vertices, edges)
    return ReductionInstance(graph, tuple(parts), tuple(roles), f)


def nae_brute_force(f: NAEFormula, max_variables: int = 24) -> dict[int, bool] | None:
    """First assignment (by binary counting) giving every clause a true and
    a false literal, or None."""
    if f.variable_count > max_variables:
        raise ValueError(f"formula has {f.variable_count} variables, limit is {max_variables}")
    r = f.variable_count
    for mask in range(1 << r):
        assignment = {i: bool(mask >> (i - 1) & 1) for i in range(1, r + 1)}
        if _nae_satisfies(f, assignment):
            return assignment
    return None


def _nae_satisfies(f: NAEFormula, a: Mapping[int, bool]) -> bool:
    for clause in f.clauses:
        values = [a[abs(lit)] == (lit > 0) for lit in clause]
        if all(values) or not any(values):
            return False
    return True


# Clause layouts keyed by the literal truth pattern; each entry names a part
# ("O", k) or ("Y", k) with a flag for reversal of its ordered pair.
_CASE_LAYOUTS: dict[tuple[bool, bool, bool], tuple[tuple[str, int, bool], ...]] = {
    (True, True, False): (("O", 1, False), ("Y", 1, False), ("Y", 3, False),
                          ("O", 2, False), ("Y", 2, False), ("O", 3, True)),
    (True, False, False): (("O", 1, False), ("Y", 2, False), ("O", 2, True),
                           ("Y", 1, False), ("Y", 3, False), ("O", 3, True)),
    (True, False, True): (("O", 1, False), ("Y", 2, False), ("O", 2, True),
                          ("Y", 1, False), ("O", 3, False), ("Y", 3, False)),
    (False, False, True): (("O", 3, False), ("Y", 2, True), ("O", 2, True),
                           ("Y", 1, True), ("Y", 3, False), ("O", 1, True)),
    (False, True, True): (("O", 3, False), ("Y", 1, True), ("Y", 3, False),
                          ("O", 2, False), ("Y", 2, True), ("O", 1, True)),
    (False, True, False): (("Y", 3, False), ("O", 3, True), ("Y", 1, True),
                           ("O", 2, False), ("Y", 2, True), ("O", 1, True)),
}


def witness_from_assignment(inst: ReductionInstance, a: Mapping[int, bool]) -> Ordering:
    """Ordering encoding a not-all-equal satisfying assignment.

    Variable terminals open and close the ordering; each clause's parts sit
    in between, arranged by the clause's literal truth pattern.
    """
    f = inst.formula
    if set(a) != set(range(1, f.variable_count + 1)):
        raise ValueError("assignment must cover every variable exactly")
    if not _nae_satisfies(f, a):
        raise ValueError("assignment does not not-all-equal satisfy the formula")
    out: list[VertexId] = []
    for i in range(1, f.variable_count + 1):
        out.append(_terminal(i, "F") if a[i] else _terminal(i, "T"))
    for j, clause in enumerate(f.clauses, start=1):
        pattern = tuple(a[abs(lit)] == (lit > 0) for lit in clause)
        pairs = {k: _ordered_incidence_pair(clause[k - 1], j) for k in (1, 2, 3)}
        ys = {k: (_ynode(k, j, 1), _ynode(k, j, 2)) for k in (1, 2, 3)}
        for kind, k, rev in _CASE_LAYOUTS[pattern]:
            pair = pairs[k] if kind == "O" else ys[k]
            out.extend(reversed(pair) if rev else pair)
    for i in range(1, f.variable_count + 1):
        out.append(_terminal(i, "T") if a[i] else _terminal(i, "F"))
    return tuple(out)


def decode_assignment(inst: ReductionInstance, s: Sequence[VertexId]) -> dict[int, bool]:
    """Read the assignment off an ordering: a variable is true when its
    false-terminal precedes its true-terminal."""
    pos = {v: k for k, v in enumerate(s)}
    out = {}
    for i in range(1, inst.formula.variable_count + 1):
        out[i] = pos[_terminal(i, "F")] < pos[_terminal(i, "T")]
    return out


def parse_nae_dimacs(text: str) -> NAEFormula:
    """Parse the ``p nae3 <vars> <clauses>`` header format, one clause per
    line as three nonzero signed integers; ``c`` lines are comments."""
    header: tuple[int, int] | None = None
    clauses: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if header is None:
            fields = line.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "nae3":
                raise ValueError(f"line {lineno}: expected header 'p nae3 <vars> <clauses>'")
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise ValueError(f"line {lineno}: header counts must be integers") from None
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"line {lineno}: expected exactly three literals")
        try:
            lits = tuple(int(x) for x in fields)
        except ValueError:
            raise ValueError(f"line {lineno}: literals must be integers") from None
        if any(l == 0 for l in lits):
            raise ValueError(f"line {lineno}: zero is not a literal")
        clauses.append(lits)  # type: ignore[arg-type]
    if header is None:
        raise ValueError("missing 'p nae3' header")
    r, s = header
    if len(clauses) != s:
        raise ValueError(f"header promises {s} clauses, found {len(clauses)}")
    return NAEFormula(r, tuple(clauses))
