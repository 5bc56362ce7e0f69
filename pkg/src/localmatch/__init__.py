"""Local augmenting-path matching, certified brackets and sublinear estimation
for bounded-degree graphs."""

__version__ = "0.1.0"

from .bs_stats import (
    BallDistribution,
    ConvergenceTrace,
    ball_distribution,
    run_convergence_experiment,
    tv_distance,
)
from .canon import canonical_code
from .exact import Matching, brute_force_matching, matching_ratio, maximum_matching
from .generators import FamilySpec, generate, load_graph, save_graph
from .graph import Graph, RootedBall, ball_extract, ball_growth_check, build_graph
from .local_matcher import (
    AugmentingPath,
    BracketReport,
    ImproverConfig,
    augment,
    find_augmenting_path,
    run_improver,
    verify_bracket,
)
from .oracle import (
    EstimateReport,
    LocalOracle,
    OracleConfig,
    estimate_matching_ratio,
    query_matched,
    query_short_path_endpoint,
)

__all__ = [
    "AugmentingPath",
    "BallDistribution",
    "BracketReport",
    "ConvergenceTrace",
    "EstimateReport",
    "FamilySpec",
    "Graph",
    "ImproverConfig",
    "LocalOracle",
    "Matching",
    "OracleConfig",
    "RootedBall",
    "augment",
    "ball_distribution",
    "ball_extract",
    "ball_growth_check",
    "brute_force_matching",
    "build_graph",
    "canonical_code",
    "estimate_matching_ratio",
    "find_augmenting_path",
    "generate",
    "load_graph",
    "matching_ratio",
    "maximum_matching",
    "query_matched",
    "query_short_path_endpoint",
    "run_convergence_experiment",
    "run_improver",
    "save_graph",
    "tv_distance",
]
