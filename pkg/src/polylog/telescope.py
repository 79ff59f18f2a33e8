"""Sums over anchored trees weighted by telescoped ratio products.

Both the chromatic and the graph-homomorphism recursions need, for an
anchor and an order ``m``,

    sum_T  weight(T) * prod_i R_{S - {w_1..w_{i-1}}, w_i}   (each at order m-|T|)

where ``w_1, w_2, ...`` are the vertices of ``T`` in discovery order (for a
vertex anchor ``v`` the anchor itself is removed first and is not a factor).
A child tree adds a single vertex to its parent, so its product is the
parent's product, truncated one order lower, times one fresh ratio.
"""

from __future__ import annotations

from typing import Callable

from .graph import Graph, VertexMask
from .series import EXACT, TruncSeries, mul_trunc, recip_one_plus, sum_series
from .trees import Anchor, Subtree, SubtreeWalk

RatioFn = Callable[[VertexMask, int, int], TruncSeries]


def _factor(ratio: RatioFn, mask: VertexMask, removed, w: int, j: int) -> TruncSeries:
    # R_{S - removed, w} at order j
    for x in removed:
        mask.push(x)
    try:
        return ratio(mask, w, j)
    finally:
        for _ in removed:
            mask.pop()


def telescoped_tree_sum(
    G: Graph,
    mask: VertexMask,
    anchor: Anchor,
    m: int,
    ratio: RatioFn,
    weight: Callable[[Subtree], TruncSeries] | None = None,
    keep: Callable[[Subtree], bool] | None = None,
    allowed: Callable[[int], bool] | None = None,
    kind: str = EXACT,
) -> TruncSeries:
    """Order-``m`` sum over trees containing ``anchor`` with ``1..m`` edges.

    ``ratio(mask, w, j)`` returns ``R_{S,w}`` at order ``j`` for the current
    mask.  ``weight(T)`` is an order-``m`` series divisible by
    ``x^|T|``; ``None`` means the monomial ``x^|T|``.  Trees failing
    ``keep`` are dropped together with all their supertrees.
    """
    walk = SubtreeWalk(G, mask, anchor, m, allowed)
    prods: list[TruncSeries | None] = [None] * (m + 1)
    terms = []
    # unweighted terms grouped by tree size, shifted once per group
    by_size: list[list[TruncSeries]] = [[] for _ in range(m + 1)]
    for T in walk:
        if keep is not None and not keep(T):
            walk.prune()
            continue
        d = T.edge_count
        j = m - d
        verts = T.vertices
        if j == 0:
            # every ratio has constant term 1
            prod = TruncSeries.one(0, kind)
        elif d == 1:
            if anchor.is_vertex:
                prod = _factor(ratio, mask, verts[:1], verts[1], j)
            else:
                a = _factor(ratio, mask, (), verts[0], j)
                b = _factor(ratio, mask, verts[:1], verts[1], j)
                prod = mul_trunc(a, b, j)
        else:
            w = _factor(ratio, mask, verts[:-1], verts[-1], j)
            prod = mul_trunc(prods[d - 1], w, j)
        prods[d] = prod
        if weight is None:
            by_size[d].append(prod)
        else:
            terms.append(mul_trunc(weight(T), prod, m))
    for d, group in enumerate(by_size):
        if group:
            terms.append(sum_series(group, m - d, kind).shift(d, m))
    return sum_series(terms, m, kind)


def telescoped_product(ratio: RatioFn, mask: VertexMask, vertices, j: int, kind: str = EXACT) -> TruncSeries:
    """``prod_i R_{S - {w_1..w_{i-1}}, w_i}`` at order ``j``, computed directly.

    Reference form of the product built incrementally above; any vertex
    order gives the same truncated series.
    """
    prod = TruncSeries.one(j, kind)
    pushed = 0
    try:
        for w in vertices:
            prod = mul_trunc(prod, ratio(mask, w, j), j)
            mask.push(w)
            pushed += 1
    finally:
        for _ in range(pushed):
            mask.pop()
    return prod


class RatioCache:
    """Memoised ``R_{S,v} = 1 / (1 + sum_T weight(T) * telescoped product)``.

    One instance serves one top-level computation.  Every nested request
    ``(S, v, j)`` satisfies ``j + |V - S| <= budget``, so each ratio is
    computed once, at order ``budget - |V - S|``, and later requests are
    answered by truncation.  ``keep`` and ``weight`` are passed on to
    :func:`telescoped_tree_sum`; ``weight(T, m)`` receives the order.
    """

    def __init__(self, G: Graph, kind: str, budget: int, keep=None, weight=None):
        self.G = G
        self.kind = kind
        self.budget = budget
        self.keep = keep
        self.weight = weight
        self.ratios: dict = {}

    def ratio(self, mask: VertexMask, v: int, m: int) -> TruncSeries:
        if m == 0:
            return TruncSeries.one(0, self.kind)
        key = (mask.key(), v)
        hit = self.ratios.get(key)
        if hit is None or hit.order < m:
            top = max(m, self.budget - mask.removed_count)
            weight = None if self.weight is None else (lambda T: self.weight(T, top))
            f = telescoped_tree_sum(
                self.G, mask, Anchor.vertex(v), top, self.ratio, weight=weight, keep=self.keep, kind=self.kind
            )
            hit = self.ratios[key] = recip_one_plus(f, top)
        return hit if hit.order == m else hit.truncate(m)
