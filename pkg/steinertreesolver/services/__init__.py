"""Services package: tree maps, the Max-Sum engine, heuristics, rooting, the solver driver, the oracle and generators."""
from .tree_service import (
    energy,
    gap,
    is_feasible,
    prune_leaves,
    representation_energy,
    representation_to_subgraph,
    tree_to_representation,
    validate_representation,
)
from .maxsum_engine import MaxSumEngine, StabilityMonitor
from .heuristics_service import (
    HeuristicsService,
    best_of,
    extract_mst,
    extract_spt,
    reweight_edges,
    reweight_nodes,
)
from .goemans_williamson import extract_gw, plain_gw
from .rooting_service import RootingService, build_augmented_instance, compute_dmin, root_spg
from .solver_service import SolverService, SolveResult, GapReport, compare
from .oracle_service import brute_force_optimum, exhaustive_update, reference_mst, reference_sssp
from .generator_service import GeneratorService
