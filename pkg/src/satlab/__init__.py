"""satlab: saturation and weak-saturation laboratory for cliques in
random graphs.

Build near-minimum K_s-saturated subgraphs of G(n,p), exactly minimum
weakly K_s-saturated subgraphs, and validate both against brute-force
oracles and closed-form baselines.
"""

from .graph import (
    Graph,
    GraphFormatError,
    common_neighbors,
    complete_graph,
    disjoint_clique_extensions,
    find_clique,
    gnp_generate,
    greedy_coloring,
    parse_graph,
    serialize_graph,
)
from .rng import RngHandle
from .saturation import (
    CliqueRichReport,
    ConstructionParams,
    LayeredPartition,
    SaturationReport,
    clique_rich_subgraph,
    completes_pair,
    default_params,
    edgecover_bound,
    edgecover_experiment,
    escape_vertices,
    is_ks_saturated,
    layered_construction,
    lower_bound_value,
    maximal_ks_free_extension,
    naive_sequential_construction,
    verify_clique_rich,
)
from .weaksat import (
    ClosureTrace,
    GoodnessReport,
    WeakSatStageError,
    WeakSatTrace,
    bootstrap_closure,
    check_p1,
    check_p2,
    construct_weak_sat,
    gamma_constant,
    is_weakly_saturated,
    strongly_saturated_in_kn,
    wsat_formula,
)
from .oracle import (
    OracleBudgetError,
    OracleResult,
    enumerate_maximal_ks_free,
    exact_sat,
    exact_wsat,
)
from .experiment import (
    ConvergenceTable,
    ExperimentConfig,
    ExperimentRecord,
    convergence_table,
    records_to_csv,
    records_to_json,
    run,
)

__version__ = "0.1.0"
