"""Ranking inference for pairwise-comparison data under the BTL model."""

from ._btlrank import (
    ComparisonDataset,
    ComparisonGraph,
    DebiasResult,
    DisconnectedGraphError,
    InsufficientUsersError,
    NoConvergenceError,
    SelectionResult,
    SingularSystemError,
    TestReport,
    __version__,
    benjamini_yekutieli,
    debias,
    divider_cardinality,
    equalize_replicates,
    fit_mle,
    generate_graph,
    generate_outcomes,
    multiple_testing_signal,
    property_holds,
    rank_of,
    ratings_to_comparisons,
    scores_uniform,
    select_topk_fdr_by,
    select_topk_fwer,
    signal_distance,
    test_pairwise,
    test_topk,
)

__all__ = [
    "ComparisonDataset",
    "ComparisonGraph",
    "DebiasResult",
    "DisconnectedGraphError",
    "InsufficientUsersError",
    "NoConvergenceError",
    "SelectionResult",
    "SingularSystemError",
    "TestReport",
    "__version__",
    "benjamini_yekutieli",
    "debias",
    "divider_cardinality",
    "equalize_replicates",
    "fit_mle",
    "generate_graph",
    "generate_outcomes",
    "multiple_testing_signal",
    "property_holds",
    "rank_of",
    "ratings_to_comparisons",
    "scores_uniform",
    "select_topk_fdr_by",
    "select_topk_fwer",
    "signal_distance",
    "test_pairwise",
    "test_topk",
]
