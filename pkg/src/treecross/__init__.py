"""Edge crossings in linear arrangements of trees.

Exact crossing counts, null-model crossing predictors (length-blind,
pairwise-length-informed, and full length-profile brute force), exact
conditional crossing probabilities, uniform random labeled trees, and
conditioned ensemble experiments measuring prediction error.
"""

from importlib.resources import files as _files
from pathlib import Path

from .crossings import CrossingCount, count_crossings, edges_cross
from .experiments import (
    AnalysisReport,
    DeltaStats,
    EnsembleConfig,
    analyze,
    analyze_fixture,
    delta,
    format_two_sig,
    run_ensemble,
)
from .graph_core import (
    EdgeSpan,
    LabeledTree,
    LinearArrangement,
    ValidationError,
    build_tree,
    c_max,
    degree_second_moment,
    disjoint_edge_pairs,
    edge_span,
    read_arrangement,
    read_tree,
    total_length,
)
from .predictors import (
    PCrossTable,
    PredictionReport,
    alpha_pairs,
    beta_pairs,
    build_p_table,
    e0,
    e2,
    e_full,
    expected_e0_random_tree,
    expected_k2_random_tree,
    joint_length_distribution,
    length_preserving_report,
    p_cross_given_lengths,
    prediction_report,
    verify_identity,
)
from .random_trees import (
    SamplerConfig,
    SamplingExhaustedError,
    aldous_broder,
    all_labeled_trees,
    identity_arrangement,
    sample_conditioned,
    stream,
)

__version__ = "0.1.0"


def data_file(name: str) -> Path:
    """Path of a bundled example data file, e.g. ``sentence_a.edges``."""
    return Path(str(_files("treecross.data").joinpath(name)))


__all__ = [
    "AnalysisReport",
    "CrossingCount",
    "DeltaStats",
    "EdgeSpan",
    "EnsembleConfig",
    "LabeledTree",
    "LinearArrangement",
    "PCrossTable",
    "PredictionReport",
    "SamplerConfig",
    "SamplingExhaustedError",
    "ValidationError",
    "aldous_broder",
    "all_labeled_trees",
    "alpha_pairs",
    "analyze",
    "analyze_fixture",
    "beta_pairs",
    "build_p_table",
    "build_tree",
    "c_max",
    "count_crossings",
    "data_file",
    "degree_second_moment",
    "delta",
    "disjoint_edge_pairs",
    "e0",
    "e2",
    "e_full",
    "edge_span",
    "edges_cross",
    "expected_e0_random_tree",
    "expected_k2_random_tree",
    "format_two_sig",
    "identity_arrangement",
    "joint_length_distribution",
    "length_preserving_report",
    "p_cross_given_lengths",
    "prediction_report",
    "read_arrangement",
    "read_tree",
    "run_ensemble",
    "sample_conditioned",
    "stream",
    "total_length",
    "verify_identity",
]
