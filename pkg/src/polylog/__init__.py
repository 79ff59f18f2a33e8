"""Low-order Taylor coefficients of log partition functions on graphs.

Covers the independence polynomial, the sink-free orientation polynomial
(with an approximate counter for sink-free orientations), the chromatic
polynomial and graph-homomorphism partition functions.  All of them are
computed through ratio recursions on induced subgraphs, in exact rational
arithmetic by default.
"""

from .chromatic import log_p, p_edge_in_ratio, ratio_chrom
from .graph import Graph, GraphError, GraphParseError, VertexMask, load_edge_list, read_graph
from .graphhom import SymMatrix, load_matrix, log_h, ratio_hom, read_matrix, tree_weight
from .hardcore import log_z_hc, ratio_hc
from .series import EXACT, FLOAT, TruncSeries, integrate_logderiv, mul_trunc, recip_one_plus
from .sinkfree import DegreeError, SfoEstimate, approx_sfo, error_bound, log_z_sfo, ratio_sfo, truncation_order
from .trees import Anchor, EdgeOrder, Subtree, iter_subtrees

__version__ = "0.1.0"

__all__ = [
    "Anchor",
    "DegreeError",
    "EXACT",
    "EdgeOrder",
    "FLOAT",
    "Graph",
    "GraphError",
    "GraphParseError",
    "SfoEstimate",
    "Subtree",
    "SymMatrix",
    "TruncSeries",
    "VertexMask",
    "approx_sfo",
    "error_bound",
    "integrate_logderiv",
    "iter_subtrees",
    "load_edge_list",
    "load_matrix",
    "log_h",
    "log_p",
    "log_z_hc",
    "log_z_sfo",
    "mul_trunc",
    "p_edge_in_ratio",
    "ratio_chrom",
    "ratio_hc",
    "ratio_hom",
    "ratio_sfo",
    "read_graph",
    "read_matrix",
    "recip_one_plus",
    "tree_weight",
    "truncation_order",
]
