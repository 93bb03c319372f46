"""Seeded graph matching with community side information.

Core pieces: a correlated stochastic-block-model pair generator, a naive
matcher on community degree vectors, a bootstrap-percolation matcher with
pluggable thresholds, closed-form bounds, evaluation metrics, and a
Monte-Carlo sweep harness with a CSV-emitting CLI.
"""

from .bench import (
    derive_seed,
    find_percolation_threshold,
    realpair_from_underlying,
    run_sweep,
    run_trial,
)
from .config import ExperimentConfig, load_config, parse_config
from .errors import (
    CommunityMismatch,
    ConfigError,
    DivergentBound,
    EmptyCommunity,
    InvalidEdge,
    InvalidParams,
    InvalidSeeds,
    ParseError,
    PartialLabeling,
    SidematchError,
    SizeMismatch,
)
from .generate import (
    CorrelatedInstance,
    SbmParams,
    SeedSet,
    censor_instance_labels,
    censor_labels,
    gen_correlated,
    gen_sbm,
    sample_seed_set,
    sample_seeds_by_community,
)
from .graph import (
    UNLABELED,
    CommunityLabeling,
    Graph,
    GroundTruth,
    build_graph,
    community_degree_matrix,
    community_degree_vector,
    intersection_graph,
    largest_component,
)
from .ingest import ingest_edge_list, ingest_labels, restrict_to_lcc
from .metrics import (
    MetricsReport,
    evaluate,
    lemma1_exponent,
    theorem1_b_bound,
    theorem2_seed_bound,
    theorem3_pf_bound,
)
from .naive import (
    Matching,
    delta_distance,
    make_injective,
    naive_match,
    naive_match_partial,
)
from .percolation import (
    PercolationResult,
    TwoThreshold,
    Uniform,
    candidate_pairs,
    percolate,
    percolate_community_rounds,
)

__version__ = "0.1.0"

__all__ = [
    "CommunityLabeling", "CommunityMismatch", "ConfigError",
    "CorrelatedInstance", "DivergentBound", "EmptyCommunity",
    "ExperimentConfig", "Graph", "GroundTruth", "InvalidEdge",
    "InvalidParams", "InvalidSeeds", "Matching", "MetricsReport",
    "ParseError", "PartialLabeling", "PercolationResult", "SbmParams",
    "SeedSet", "SidematchError", "SizeMismatch", "TwoThreshold", "UNLABELED",
    "Uniform", "build_graph", "candidate_pairs", "censor_instance_labels",
    "censor_labels", "community_degree_matrix", "community_degree_vector",
    "delta_distance", "derive_seed", "evaluate", "find_percolation_threshold",
    "gen_correlated", "gen_sbm", "ingest_edge_list", "ingest_labels",
    "intersection_graph", "largest_component", "lemma1_exponent",
    "load_config", "make_injective", "naive_match", "naive_match_partial",
    "parse_config", "percolate", "percolate_community_rounds",
    "realpair_from_underlying", "restrict_to_lcc", "run_sweep", "run_trial",
    "sample_seed_set",
    "sample_seeds_by_community", "theorem1_b_bound", "theorem2_seed_bound",
    "theorem3_pf_bound",
]
