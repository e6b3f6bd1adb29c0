"""koptlab: a desk-scale laboratory for k-optimal vertex sets and friends.

Graphs are small and exact: potentials and optima by enumeration, degree
demands by max flow with certificate extraction, triangle packing/covering
by branch and bound, saturating edge colorings by chordal elimination and by
the kernel method, and a verification harness that sweeps the constructions
against brute-force oracles and hunts for conjecture counterexamples.
"""

from .caps import CapExceeded
from .errors import ContractViolation, CounterexampleFound
from .graphs import (
    BipartiteSplit,
    Graph,
    Graph6Error,
    Orientation,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    encode_graph6,
    format_edge_list,
    induced_subgraph,
    join_independent,
    orient_all,
    parse_edge_list,
    parse_graph6,
    path_graph,
    star_graph,
    triangles,
)
from .matching import (
    DemandProfile,
    HallViolator,
    KEdgeChromaticSubgraph,
    auxiliary_extension,
    check_generalized_lebensold,
    konig_color,
    lebensold_classic,
)
from .favaron import (
    OptimalSetResult,
    alpha_k,
    gamma_k,
    improve_once,
    is_k_dependent,
    is_k_dominating,
    k_optimal_exhaustive,
    k_optimal_local,
    k_optimal_sets,
    matchings_into_d,
    phi_k,
    phi_k_max,
    prune_to_dependent,
    saturating_matching_complement,
    verify_theorem_main,
)
from .tuza import (
    TriangleCover,
    TrianglePacking,
    TuzaReport,
    alpha_k_prime,
    alpha_k_prime_greedy,
    cover_from_optimal_set,
    edgetuza_pipeline,
    normalize_cover,
    nu_exact,
    packing_from_coloring,
    tau_exact,
    verify_tuza_connection,
    vizing_color,
)
from .saturation import (
    EliminationOrder,
    chordal_degree_k_subgraph,
    chordal_order,
    is_saturating,
    order_orientation,
    saturable_bruteforce,
    saturate_chordal,
    satur_pipeline,
)
from .kernels import (
    GoodDecompositionCertificate,
    InvalidDecomposition,
    SearchExhausted,
    SequentialDecomposition,
    decomposition_to_saturating,
    galvin_orientation,
    kernel_bruteforce,
    search_good_decomposition,
    validate_good,
)
from .harness import (
    GraphSource,
    VerificationReport,
    degree_demand_bruteforce,
    degree_k_subgraph_bruteforce,
    random_chordal,
    run_property,
)

__version__ = "0.1.0"
