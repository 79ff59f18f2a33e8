"""Taylor coefficients of ``log Z(G; x)`` for the independence polynomial.

For every vertex ``v`` the ratio ``R_v = Z^{v in} / Z^{v out}`` is expanded
through the recursion

    R_{S,v} = x / prod_i (1 + R_{S - {v, u_1..u_{i-1}}, u_i})

over the live neighbours ``u_1 < ... < u_l`` of ``v``.  Summing
``R_v / (1 + R_v)`` over all vertices gives ``x d/dx log Z``.
"""

from __future__ import annotations

from functools import partial

from .graph import Graph, GraphError, VertexMask
from .parallel import ordered_map
from .series import (
    EXACT,
    TruncSeries,
    integrate_logderiv,
    mul_trunc,
    recip_one_plus,
    sum_series,
)


def ratio_hc(G: Graph, mask: VertexMask, v: int, k: int, kind: str = EXACT, rng=None) -> TruncSeries:
    """Truncation at order ``k`` of ``R_{S,v}`` where ``S`` is the unmasked set.

    ``mask`` is used as scratch space and is restored before returning.
    Neighbours are processed in ascending order unless ``rng`` (a
    ``random.Random``) is given, in which case each level shuffles them.
    """
    if mask.removed[v]:
        raise GraphError(f"vertex {v} is masked out")
    if k < 0:
        raise ValueError("order must be non-negative")
    return _ratio(G, mask, v, k, kind, rng)


def _ratio(G, mask, v, k, kind, rng=None):
    if k == 0:
        return TruncSeries.zero(0, kind)
    removed = mask.removed
    nbrs = [u for u in G.adjacency[v] if not removed[u]]
    if not nbrs:
        return TruncSeries.monomial(1, 1, k, kind)
    if rng is not None:
        rng.shuffle(nbrs)
    j = k - 1
    mask.push(v)
    prod = TruncSeries.one(j, kind)
    for u in nbrs:
        r = _ratio(G, mask, u, j, kind, rng).truncate(j)
        prod = mul_trunc(prod, _one_plus(r), j)
        mask.push(u)
    for _ in range(len(nbrs) + 1):
        mask.pop()
    f = prod - TruncSeries.one(j, kind)
    return recip_one_plus(f, j).shift(1, k)


def _one_plus(r: TruncSeries) -> TruncSeries:
    return r + TruncSeries.one(r.order, r.kind)


def _vertex_term(G: Graph, m: int, kind: str, v: int) -> TruncSeries:
    r = _ratio(G, VertexMask(G.n), v, m, kind).truncate(m)
    return mul_trunc(r, recip_one_plus(r, m), m)


def log_z_hc(G: Graph, m: int, kind: str = EXACT, threads: int | None = 1) -> TruncSeries:
    """Order-``m`` Taylor polynomial of ``log Z(G; x)``.

    Per-vertex terms may run on ``threads`` workers; they are summed in
    vertex order.
    """
    if m < 0:
        raise ValueError("order must be non-negative")
    if G.n == 0 or m == 0:
        return TruncSeries.zero(m, kind)
    terms = ordered_map(partial(_vertex_term, G, m, kind), range(G.n), threads)
    return integrate_logderiv(sum_series(terms, m, kind))
