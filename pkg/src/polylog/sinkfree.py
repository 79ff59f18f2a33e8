"""Approximate counting of sink-free orientations.

``sfo(G) = 2^m Z_sfo(G; 1/2)`` where

    Z_sfo(G; t) = sum over independent sets S of prod_{v in S} (-t^deg(v)).

For minimum degree ``delta >= 3`` the polynomial has no zeros in the disk of
radius ``r_delta = (delta-1)^((delta-1)/delta) / delta > 1/2``, so a truncated
Taylor expansion of ``log Z_sfo`` at ``t = 1/2`` converges with an explicit
error bound.  The coefficients come from a ratio recursion in which every
vertex keeps its full-graph degree, even inside induced subgraphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import partial

from .graph import Graph, GraphError, VertexMask
from .parallel import ordered_map
from .series import (
    EXACT,
    TruncSeries,
    eval_at,
    integrate_logderiv,
    mul_trunc,
    recip_one_plus,
    sum_series,
)

# decimal digits for count rendering: 53 + 64 bits is about 35 digits
_DECIMAL_DIGITS = 36


class DegreeError(ValueError):
    """Minimum degree below 3: the zero-free disk does not reach 1/2."""


def r_delta(delta: int) -> float:
    """Radius of the zero-free disk for minimum degree ``delta``."""
    if delta < 3:
        raise DegreeError(
            f"delta={delta}: need minimum degree >= 3; for degree-2 vertices the "
            "zeros of Z_sfo(C_n; t) accumulate at t = 1/2"
        )
    return (delta - 1) ** ((delta - 1) / delta) / delta


def ratio_sfo(G: Graph, mask: VertexMask, v: int, k: int, kind: str = EXACT) -> TruncSeries:
    """Order-``k`` truncation of ``R_{U,v}`` for the unmasked set ``U``.

    ``R_{U,v} = -t^deg(v) / prod_i (1 + R_{U - {v, u_1..u_{i-1}}, u_i})``
    with ``deg`` taken in the full graph.  The result is 0 when
    ``deg(v) > k``.
    """
    if mask.removed[v]:
        raise GraphError(f"vertex {v} is masked out")
    if k < 0:
        raise ValueError("order must be non-negative")
    return _ratio(G, mask, v, k, kind)


def _ratio(G, mask, v, k, kind):
    d = G.degree(v)
    if k == 0 or d > k:
        return TruncSeries.zero(k, kind)
    j = k - d
    removed = mask.removed
    nbrs = [u for u in G.adjacency[v] if not removed[u]]
    if j == 0 or not nbrs:
        return TruncSeries.monomial(d, -1, k, kind)
    mask.push(v)
    prod = TruncSeries.one(j, kind)
    for u in nbrs:
        r = _ratio(G, mask, u, j, kind)
        if not r.is_zero():
            prod = mul_trunc(prod, r + TruncSeries.one(j, kind), j)
        mask.push(u)
    for _ in range(len(nbrs) + 1):
        mask.pop()
    inv = recip_one_plus(prod - TruncSeries.one(j, kind), j)
    return (-inv).shift(d, k)


def _vertex_term(G: Graph, k: int, kind: str, v: int) -> TruncSeries:
    r = _ratio(G, VertexMask(G.n), v, k, kind)
    return mul_trunc(r, recip_one_plus(r, k), k).scale(G.degree(v))


def log_z_sfo(G: Graph, k: int, kind: str = EXACT, threads: int | None = 1) -> TruncSeries:
    """Order-``k`` Taylor polynomial of ``log Z_sfo(G; t)``."""
    if k < 0:
        raise ValueError("order must be non-negative")
    if G.n and G.min_degree == 0:
        raise DegreeError("isolated vertex: Z_sfo vanishes identically")
    if G.n == 0 or k == 0:
        return TruncSeries.zero(k, kind)
    terms = ordered_map(partial(_vertex_term, G, k, kind), range(G.n), threads)
    return integrate_logderiv(sum_series(terms, k, kind))


def truncation_order(m_edges: int, epsilon: float, delta: int) -> int:
    """Smallest ``k >= 1`` with ``k >= log(m/eps) / log(2 r_delta)``."""
    if m_edges < 1 or epsilon <= 0:
        raise ValueError("need m_edges >= 1 and epsilon > 0")
    base = math.log(2 * r_delta(delta))
    x = math.log(m_edges / epsilon)
    if x <= 0:
        return 1
    return max(1, math.ceil(x / base))


def error_bound(m_edges: int, k: int, delta: int) -> float:
    """``2m / ((k+1)(2r-1)(2r)^k)``: truncation error of the log at t = 1/2."""
    if k < 1:
        raise ValueError("k must be >= 1")
    two_r = 2 * r_delta(delta)
    return 2 * m_edges / ((k + 1) * (two_r - 1) * two_r**k)


def certified_order(m_edges: int, epsilon: float, delta: int) -> int:
    """Smallest ``k >= 1`` whose :func:`error_bound` is at most ``epsilon``."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    two_r = 2 * r_delta(delta)
    # bound(k) < 2m / ((2r-1)(2r)^k), so this k is an upper bound to start from
    hi = max(1, math.ceil(math.log(2 * m_edges / ((two_r - 1) * epsilon)) / math.log(two_r)))
    k = hi
    while k > 1 and error_bound(m_edges, k - 1, delta) <= epsilon:
        k -= 1
    while error_bound(m_edges, k, delta) > epsilon:
        k += 1
    return k


def runtime_exponent(delta: int, eta: float = 0.0, sharpened: bool = False) -> float:
    """Exponent ``a`` in the per-vertex cost ``(m/eps)^a`` of the recursion.

    The plain analysis costs ``e^{k/e}`` per vertex; the sharpened one
    replaces ``k/e`` by ``k (1+eta) log(delta) / delta``.
    """
    per_k = (1 + eta) * math.log(delta) / delta if sharpened else 1 / math.e
    return per_k / math.log(2 * r_delta(delta))


@dataclass(frozen=True)
class SfoEstimate:
    n: int
    m: int
    delta: int
    k: int
    taylor_value: Fraction  # f_k(1/2)
    bound: float
    log_count: float
    count_decimal: str
    epsilon: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "k": self.k,
            "f_k_half": f"{self.taylor_value.numerator}/{self.taylor_value.denominator}",
            "bound": self.bound,
            "log_count": self.log_count,
            "count_decimal": self.count_decimal,
            "epsilon": self.epsilon,
        }


def _log_count_decimal(m: int, f: Fraction) -> tuple[float, str]:
    with localcontext() as ctx:
        ctx.prec = _DECIMAL_DIGITS
        log_count = m * Decimal(2).ln() + Decimal(f.numerator) / Decimal(f.denominator)
        count = log_count.exp()
        return float(log_count), format(count, "g")


def approx_sfo(
    G: Graph,
    epsilon: float,
    delta: int | None = None,
    threads: int | None = 1,
) -> SfoEstimate:
    """Approximate ``log sfo(G)`` within ``epsilon``.

    ``delta`` defaults to the minimum degree; a smaller value (>= 3) may be
    given and only weakens the bound.  The truncation order is the larger of
    the closed-form choice and the smallest order whose error bound is at
    most ``epsilon``, so the returned ``bound <= epsilon`` always.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if G.m == 0:
        raise DegreeError("graph has no edges")
    mindeg = G.min_degree
    if delta is None:
        delta = mindeg
    if delta > mindeg:
        raise DegreeError(f"delta={delta} exceeds the minimum degree {mindeg}")
    r_delta(delta)
    k = max(truncation_order(G.m, epsilon, delta), certified_order(G.m, epsilon, delta))
    series = log_z_sfo(G, k, EXACT, threads)
    f = eval_at(series, Fraction(1, 2))
    log_count, decimal = _log_count_decimal(G.m, f)
    return SfoEstimate(
        n=G.n,
        m=G.m,
        delta=delta,
        k=k,
        taylor_value=f,
        bound=error_bound(G.m, k, delta),
        log_count=log_count,
        count_decimal=decimal,
        epsilon=epsilon,
    )
