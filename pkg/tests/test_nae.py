import itertools
import random

import pytest

from precthin import (
    NAEFormula,
    decode_assignment,
    induced_subgraph,
    nae_brute_force,
    parse_nae_dimacs,
    reduce_formula,
    verify,
    verify_precedence,
    witness_from_assignment,
)
from precthin.nae import _nae_satisfies

from corpus import def_strongly_consistent


def all_nae_assignments(f):
    r = f.variable_count
    for mask in range(1 << r):
        a = {i: bool(mask >> (i - 1) & 1) for i in range(1, r + 1)}
        if _nae_satisfies(f, a):
            yield a


def test_formula_validation():
    with pytest.raises(ValueError):
        NAEFormula(2, ((1, 2, 3),))
    with pytest.raises(ValueError):
        NAEFormula(3, ((1, -1, 2),))
    with pytest.raises(ValueError):
        NAEFormula(3, ((1, 2, 0),))


def test_reduce_single_clause_sizes():
    f = NAEFormula(3, ((1, 2, 3),))
    inst = reduce_formula(f)
    assert len(inst.partition) == 12
    assert inst.graph.n == 18
    # six variable-link edges plus the fifteen clause edges
    assert inst.graph.m == 21
    assert all(len(p) <= 2 for p in inst.partition)
    singles = [p for p in inst.partition if len(p) == 1]
    assert len(singles) == 6


def test_reduce_empty_clause_list():
    f = NAEFormula(4, ())
    inst = reduce_formula(f)
    assert len(inst.partition) == 8
    assert inst.graph.m == 0


def test_reduce_shared_variable():
    f = NAEFormula(4, ((1, 2, 3), (-1, 3, 4)))
    inst = reduce_formula(f)
    incidences = 6
    r, s = 4, 2
    assert len(inst.partition) == incidences + 2 * r + 3 * s
    assert inst.graph.n == 2 * incidences + 2 * r + 6 * s
    # variable 1 contributes two incidence parts, both linked to x1T/x1F
    assert inst.graph.has_edge("x1T", "x1c1T") and inst.graph.has_edge("x1T", "x1c2T")
    assert inst.graph.has_edge("x1F", "x1c1F") and inst.graph.has_edge("x1F", "x1c2F")
    roles = set(inst.part_roles)
    assert {"X_1_1", "X_1_2", "XT_1", "XF_1", "Y_1_1", "Y_3_2"} <= roles


def test_nae_brute_force_simple():
    f = NAEFormula(3, ((1, 2, 3),))
    a = nae_brute_force(f)
    assert a is not None and _nae_satisfies(f, a)


def test_nae_brute_force_all_patterns_unsatisfiable():
    clauses = []
    for pat in range(8):
        clauses.append(tuple((i + 1) * (1 if pat >> i & 1 == 0 else -1) for i in range(3)))
    f = NAEFormula(3, tuple(clauses))
    assert nae_brute_force(f) is None


def test_nae_brute_force_guard():
    f = NAEFormula(25, ())
    with pytest.raises(ValueError):
        nae_brute_force(f)


def test_witness_rejects_bad_assignment():
    f = NAEFormula(3, ((1, 2, 3),))
    inst = reduce_formula(f)
    with pytest.raises(ValueError):
        witness_from_assignment(inst, {1: True, 2: True, 3: True})


def test_witness_all_cases_single_clause():
    f = NAEFormula(3, ((1, 2, 3),))
    inst = reduce_formula(f)
    for a in all_nae_assignments(f):
        w = witness_from_assignment(inst, a)
        rep = verify(inst.graph, w, inst.partition)
        assert rep.strongly_consistent, a
        assert verify_precedence(w, inst.partition)
        assert decode_assignment(inst, w) == a


def test_witness_forward_soundness_random_formulas():
    rng = random.Random(83)
    for _ in range(25):
        r = rng.randint(3, 5)
        s = rng.randint(1, 3)
        clauses = []
        for _ in range(s):
            vs = rng.sample(range(1, r + 1), 3)
            clauses.append(tuple(v * rng.choice([1, -1]) for v in vs))
        f = NAEFormula(r, tuple(clauses))
        for a in all_nae_assignments(f):
            w = witness_from_assignment(inst := reduce_formula(f), a)
            assert def_strongly_consistent(inst.graph, w, inst.partition)
            assert verify_precedence(w, inst.partition)
            assert decode_assignment(inst, w) == a


def test_reversed_witness_decodes_to_complement():
    f = NAEFormula(3, ((1, -2, 3),))
    inst = reduce_formula(f)
    a = nae_brute_force(f)
    w = witness_from_assignment(inst, a)
    back = decode_assignment(inst, tuple(reversed(w)))
    assert back == {i: not v for i, v in a.items()}
    assert _nae_satisfies(f, back)
    rep = verify(inst.graph, tuple(reversed(w)), inst.partition)
    assert rep.strongly_consistent


def test_decode_is_positional():
    f = NAEFormula(1, ())
    inst = reduce_formula(f)
    assert decode_assignment(inst, ("x1T", "x1F")) == {1: False}
    assert decode_assignment(inst, ("x1F", "x1T")) == {1: True}


# ---------------------------------------------------------------------------
# gadget-local exhaustion


def _gadget_parts_and_graph():
    f = NAEFormula(3, ((1, 2, 3),))
    inst = reduce_formula(f)
    keep = {v for v in inst.graph.vertices if v.startswith("y") or "c1" in v}
    g = induced_subgraph(inst.graph, keep)
    labels = {}
    for k in (1, 2, 3):
        labels[f"O{k}"] = (f"x{k}c1F", f"x{k}c1T")  # positive literal order
        labels[f"Y{k}"] = (f"y{k}c1_1", f"y{k}c1_2")
    return g, labels


def _pairwise_items_ok(seq):
    """The eight pairwise position/orientation conditions on the clause
    parts; ``seq`` is a tuple of (name, forward) in block order."""
    pos = {name: i for i, (name, _) in enumerate(seq)}
    fwd = {name: f for name, f in seq}

    def before(a, b):
        return pos[a] < pos[b]

    checks = [
        # O1 vs Y1: aligned orientations with O1 first, or both reversed
        (before("O1", "Y1") and fwd["O1"] and fwd["Y1"])
        or (before("Y1", "O1") and not fwd["O1"] and not fwd["Y1"]),
        # O1 vs Y2
        (before("O1", "Y2") and fwd["Y2"]) or (before("Y2", "O1") and not fwd["Y2"]),
        # O2 vs Y1
        (before("O2", "Y1") and not fwd["O2"]) or (before("Y1", "O2") and fwd["O2"]),
        # O2 vs Y2
        (before("O2", "Y2") and fwd["O2"]) or (before("Y2", "O2") and not fwd["O2"]),
        # O2 vs Y3
        (before("O2", "Y3") and not fwd["O2"]) or (before("Y3", "O2") and fwd["O2"]),
        # O3 vs Y1
        (before("O3", "Y1") and not fwd["Y1"]) or (before("Y1", "O3") and fwd["Y1"]),
        # O3 vs Y2
        (before("O3", "Y2") and not fwd["Y2"]) or (before("Y2", "O3") and fwd["Y2"]),
        # O3 vs Y3
        (before("O3", "Y3") and fwd["O3"]) or (before("Y3", "O3") and not fwd["O3"]),
    ]
    return all(checks)


EXPECTED_CORES = {
    # (part, forward) sequences restricted to O1,O2,O3,Y1,Y2; the floating
    # part Y3 is free in position and orientation within its constraints
    (("O1", True), ("Y1", True), ("O2", True), ("Y2", True), ("O3", False)),
    (("O1", True), ("Y2", True), ("O2", False), ("Y1", True), ("O3", False)),
    (("O1", True), ("Y2", True), ("O2", False), ("Y1", True), ("O3", True)),
    (("O3", True), ("Y2", False), ("O2", False), ("Y1", False), ("O1", False)),
    (("O3", True), ("Y1", False), ("O2", True), ("Y2", False), ("O1", False)),
    (("O3", False), ("Y1", False), ("O2", True), ("Y2", False), ("O1", False)),
}

CORE_PATTERNS = {
    # O-orientation triple of each core equals the truth pattern it encodes
    (True, True, False),
    (True, False, False),
    (True, False, True),
    (False, False, True),
    (False, True, True),
    (False, True, False),
}


def test_gadget_local_exhaustion():
    g, labels = _gadget_parts_and_graph()
    part_names = ["O1", "O2", "O3", "Y1", "Y2", "Y3"]
    parts = [frozenset(labels[name]) for name in part_names]
    survivors = []
    for perm in itertools.permutations(range(6)):
        for bits in range(64):
            seq = []
            order = []
            for slot, k in enumerate(perm):
                forward = not (bits >> slot & 1)
                pair = labels[part_names[k]]
                order.extend(pair if forward else reversed(pair))
                seq.append((part_names[k], forward))
            if def_strongly_consistent(g, tuple(order), parts):
                survivors.append(tuple(seq))
    assert survivors

    # the pairwise analysis is exact for the isolated gadget
    for perm in itertools.permutations(range(6)):
        for bits in range(64):
            seq = []
            order = []
            for slot, k in enumerate(perm):
                forward = not (bits >> slot & 1)
                pair = labels[part_names[k]]
                order.extend(pair if forward else reversed(pair))
                seq.append((part_names[k], forward))
            assert (tuple(seq) in set(survivors)) == _pairwise_items_ok(seq)

    cores = {tuple(pf for pf in seq if pf[0] != "Y3") for seq in survivors}
    assert cores == EXPECTED_CORES
    patterns = {
        tuple(dict(seq)[f"O{k}"] for k in (1, 2, 3)) for seq in survivors
    }
    assert patterns == CORE_PATTERNS


# ---------------------------------------------------------------------------
# DIMACS-like parsing


def test_parse_roundtrip():
    text = """c a comment
p nae3 4 2
1 -2 3
2 3 -4
"""
    f = parse_nae_dimacs(text)
    assert f.variable_count == 4
    assert f.clauses == ((1, -2, 3), (2, 3, -4))


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 1"):
        parse_nae_dimacs("p cnf 3 1\n1 2 3\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_nae_dimacs("p nae3 3 1\n1 2\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_nae_dimacs("p nae3 3 1\n1 2 0\n")
    with pytest.raises(ValueError, match="header"):
        parse_nae_dimacs("c nothing\n")
    with pytest.raises(ValueError, match="promises"):
        parse_nae_dimacs("p nae3 3 2\n1 2 3\n")
