"""Exact computation, construction and verification of fractional total colorings."""

from .coloring import (
    InfeasibleBounds,
    IntervalColoring,
    LPCertificate,
    WeightedColoring,
    fractional_total_chromatic_number,
    solve_weighted_coloring,
    verify_certificate,
    verify_interval_coloring,
    weighted_to_fractional,
    weights_to_interval_assignment,
)
from .construct import (
    SplitPlan,
    compose_factor_colorings,
    construct_coloring,
    glue_colorings,
    plan_split,
)
from .decompose import Decomposition, edge_color, ell_decomposition, verify_decomposition
from .graph import Graph, Subgraph, cyclic_edge_connectivity, d_connector, girth, neighborhood
from .graphio import parse_edge_list, parse_graph6, read_graph
from .intervals import IntervalSet, PiecewiseIsometry, extend_swap, matching_isometry
from .recolor import RecolorTask, recolor_tree
from .total import TotalElement, enumerate_maximal_tis, max_weight_tis, total_graph

__version__ = "0.1.0"
