"""Recognition of precedence (proper) k-thin graph structure.

Interval-style orderings, PQ trees over maximal cliques, consistency of
orderings with partitions, partitioned recognizers, a threshold-graph
characterization, a NAE-3SAT instance generator, and brute-force oracles.
"""

from .graphs import (
    CycleDetected,
    Digraph,
    Graph,
    Ordering,
    Partition,
    VertexId,
    connected_components,
    induced_subgraph,
    is_connected,
    topological_sort,
)
from .intervals import (
    CliqueSequence,
    canonical_from_clique_order,
    is_canonical_clique_ordering,
    is_canonical_ordering,
    is_proper_canonical_ordering,
    maximal_cliques,
    ordered_according,
    recognize_interval,
    recognize_proper_interval,
)
from .pqtree import (
    IncompatibleConstraints,
    PQNode,
    PQTree,
    PrecedenceConstraint,
    annotate_constraint,
    annotate_constraints,
    build_pqtree,
    enumerate_frontiers,
    resolve,
    tree_to_sexpr,
)
from .consistency import (
    ConsistencyReport,
    build_conflict_graph,
    greedy_min_precedence_partition,
    verify,
    verify_precedence,
)
from .recognizer import (
    Attempt,
    Certificate,
    FirstPartProbe,
    add_edges_from_pqtree,
    precedence_relations,
    probe_first_part,
    recognize_precedence_proper_thin_connected,
    recognize_precedence_proper_thin_fixed_k,
    recognize_precedence_thin,
)
from .thresholds import (
    CLIQUE,
    STABLE,
    SplitCompletion,
    check_characterization,
    in_accordance,
    is_threshold_ordering,
    split_completion,
    strongly_in_accordance,
)
from .nae import (
    NAEFormula,
    ReductionInstance,
    decode_assignment,
    nae_brute_force,
    parse_nae_dimacs,
    reduce_formula,
    witness_from_assignment,
)
from .oracle import (
    BudgetExceeded,
    OracleBudget,
    brute_force_partitioned,
    brute_force_precedence_thinness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
