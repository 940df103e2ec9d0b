"""Sublinear-query estimation of pattern subgraph counts."""

from .estimator import (
    EstimateReport,
    EstimationConfig,
    count_colorful,
    count_subgraph,
    high_probability_estimate,
    star_fast_count,
)
from .graph import Graph, QuerySession, load_graph, parse_graph
from .oracle import ExactCount, exact_count
from .pattern import Decomposition, decompose, solve_fractional_edge_cover

__all__ = [
    "Decomposition",
    "EstimateReport",
    "EstimationConfig",
    "ExactCount",
    "Graph",
    "QuerySession",
    "count_colorful",
    "count_subgraph",
    "decompose",
    "exact_count",
    "high_probability_estimate",
    "load_graph",
    "parse_graph",
    "solve_fractional_edge_cover",
    "star_fast_count",
]
