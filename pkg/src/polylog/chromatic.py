"""Taylor coefficients of ``log P(G; z)``, ``P(G; z) = (-z)^n chi(G; -1/z)``.

``P`` is the generating function of broken-circuit-free (BCF) forests by
edge count.  Splitting off the BCF tree through a fixed vertex gives

    1 / R_{S,v} = 1 + sum_{T BCF, v in T} z^|T| P(G[S - V(T)]) / P(G[S - v])

with ``R_{S,v} = P(G[S - v]) / P(G[S])``; the quotient on the right
telescopes into ratios of smaller induced subgraphs.
"""

from __future__ import annotations

from functools import partial

from .graph import Graph, GraphError, VertexMask
from .parallel import ordered_map
from .series import EXACT, TruncSeries, integrate_logderiv, sum_series
from .telescope import RatioCache, telescoped_tree_sum
from .trees import Anchor, EdgeOrder, is_bcf


def _order(G: Graph, order: EdgeOrder | None) -> EdgeOrder:
    if order is None:
        return EdgeOrder.default(G)
    if len(order) != G.m:
        raise GraphError("edge order does not match the graph")
    return order


class _Memo(RatioCache):
    # ratio cache plus BCF verdicts keyed by edge set; non-BCF trees are
    # pruned with all their supertrees, since a BCF tree's parent is BCF
    def __init__(self, G, order, kind, budget):
        super().__init__(G, kind, budget, keep=self.is_bcf)
        self.order = order
        self.bcf: dict = {}

    def is_bcf(self, T) -> bool:
        key = T.edges
        hit = self.bcf.get(key)
        if hit is None:
            hit = self.bcf[key] = is_bcf(self.G, self.order, T)
        return hit


def ratio_chrom(
    G: Graph, order: EdgeOrder | None, mask: VertexMask, v: int, m: int, kind: str = EXACT
) -> TruncSeries:
    """Order-``m`` truncation of ``P(G[S-v]) / P(G[S])`` for the unmasked ``S``."""
    if mask.removed[v]:
        raise GraphError(f"vertex {v} is masked out")
    if m < 0:
        raise ValueError("order must be non-negative")
    return _Memo(G, _order(G, order), kind, m + mask.removed_count).ratio(mask, v, m)


def p_edge_in_ratio(
    G: Graph,
    order: EdgeOrder | None,
    e: int,
    m: int,
    kind: str = EXACT,
    mask: VertexMask | None = None,
    memo: _Memo | None = None,
) -> TruncSeries:
    """Order-``m`` truncation of ``P^{e in}(G) / P(G)``.

    Sums ``z^|T|`` times the telescoped ratio over ``V(T)`` for every BCF
    tree ``T`` containing edge ``e`` with at most ``m`` edges.  ``memo``
    shares ratio values between calls on the same graph and order.
    """
    if m < 0:
        raise ValueError("order must be non-negative")
    if mask is None:
        mask = VertexMask(G.n)
    if memo is None:
        memo = _Memo(G, _order(G, order), kind, m + mask.removed_count)
    return telescoped_tree_sum(G, mask, Anchor.edge(e), m, memo.ratio, keep=memo.is_bcf, kind=kind)


def _edge_term(memo, m, e):
    return p_edge_in_ratio(memo.G, memo.order, e, m, memo.kind, memo=memo)


def log_p(
    G: Graph, m: int, order: EdgeOrder | None = None, kind: str = EXACT, threads: int | None = 1
) -> TruncSeries:
    """Order-``m`` Taylor polynomial of ``log P(G; z)``; independent of ``order``.

    Ratio values are memoised per worker.  Cached or not, a ratio has one
    value, so the result does not depend on ``threads``.
    """
    if m < 0:
        raise ValueError("order must be non-negative")
    order = _order(G, order)
    if G.m == 0 or m == 0:
        return TruncSeries.zero(m, kind)
    memo = _Memo(G, order, kind, m)
    terms = ordered_map(partial(_edge_term, memo, m), range(G.m), threads)
    return integrate_logderiv(sum_series(terms, m, kind))
