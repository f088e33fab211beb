import itertools
import random

import pytest

from precthin import (
    BudgetExceeded,
    Graph,
    NAEFormula,
    OracleBudget,
    brute_force_partitioned,
    brute_force_precedence_thinness,
    decode_assignment,
    recognize_interval,
    reduce_formula,
    verify,
    verify_precedence,
)
from precthin.nae import _nae_satisfies

from corpus import (
    atlas_graphs,
    cycle4,
    def_consistent,
    def_strongly_consistent,
    part_consecutive_orderings,
    random_graph,
    random_partition,
)


def test_budget_validation():
    with pytest.raises(ValueError):
        OracleBudget(max_vertices=0)


def test_budget_enforced():
    g = Graph.build([f"v{i}" for i in range(11)], [])
    with pytest.raises(BudgetExceeded):
        brute_force_partitioned(g, [set(g.vertices)], strong=False)
    with pytest.raises(BudgetExceeded):
        brute_force_precedence_thinness(Graph.build([f"v{i}" for i in range(9)], []), strong=False)


def test_interval_single_part_yes():
    g = Graph.from_edges([("a", "b"), ("b", "c")])
    cert = brute_force_partitioned(g, [set(g.vertices)], strong=False)
    assert cert.is_yes


def test_c4_all_bipartitions_strong():
    g = cycle4()
    outcomes = {}
    for r in (1, 2):
        for left in itertools.combinations(g.vertices, r):
            right = set(g.vertices) - set(left)
            cert = brute_force_partitioned(g, [set(left), right], strong=True)
            outcomes["".join(sorted(left))] = cert.answer
    # diagonal pairs admit a strongly consistent precedence ordering; the
    # adjacent pairs and the 1/3 splits do not
    assert outcomes["ac"] == "YES" and outcomes["bd"] == "YES"
    for key in ("a", "b", "c", "d", "ab", "ad", "bc", "cd"):
        assert outcomes[key] == "NO"


def test_witness_is_lex_first():
    rng = random.Random(97)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 5), rng.random())
        parts = random_partition(rng, g.vertices, rng.randint(1, 2))
        for strong in (False, True):
            check = def_strongly_consistent if strong else def_consistent
            feasible = sorted(
                s for s in part_consecutive_orderings(g, parts) if check(g, s, parts)
            )
            cert = brute_force_partitioned(g, parts, strong=strong)
            if feasible:
                assert cert.is_yes and cert.witness == feasible[0]
            else:
                assert not cert.is_yes


def test_oracle_witnesses_sound():
    rng = random.Random(101)
    for _ in range(80):
        g = random_graph(rng, rng.randint(1, 7), rng.random())
        parts = random_partition(rng, g.vertices, rng.randint(1, min(3, g.n)))
        for strong in (False, True):
            cert = brute_force_partitioned(g, parts, strong=strong)
            if cert.is_yes:
                rep = verify(g, cert.witness, parts)
                assert rep.strongly_consistent if strong else rep.consistent
                assert verify_precedence(cert.witness, parts)


def test_reduction_instance_strong_yes_and_decode():
    f = NAEFormula(3, ((1, 2, 3),))
    inst = reduce_formula(f)
    budget = OracleBudget(max_vertices=18, max_parts=24)
    cert = brute_force_partitioned(inst.graph, inst.partition, strong=True, budget=budget)
    assert cert.is_yes
    assert _nae_satisfies(f, decode_assignment(inst, cert.witness))


def test_thinness_values_c4():
    g = cycle4()
    assert brute_force_precedence_thinness(g, strong=False) == 2
    # the diagonal bipartition admits a strongly consistent precedence
    # ordering, so the proper variant is 2 as well
    assert brute_force_precedence_thinness(g, strong=True) == 2


def test_thinness_interval_graph_is_one():
    g = Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    assert brute_force_precedence_thinness(g, strong=False) == 1


def test_thinness_one_iff_interval_exhaustive():
    for g in atlas_graphs(6, min_n=1):
        value = brute_force_precedence_thinness(g, strong=False)
        assert value >= 1
        assert (value == 1) == (recognize_interval(g) is not None), g.edge_list()


def test_thinness_one_iff_interval_sampled_n7():
    rng = random.Random(103)
    graphs = [g for g in atlas_graphs(7, min_n=7)]
    for g in rng.sample(graphs, 150):
        value = brute_force_precedence_thinness(g, strong=False)
        assert (value == 1) == (recognize_interval(g) is not None), g.edge_list()


def test_proper_thinness_dominates_plain():
    rng = random.Random(107)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 6), rng.random())
        plain = brute_force_precedence_thinness(g, strong=False)
        strong = brute_force_precedence_thinness(g, strong=True)
        assert strong >= plain
