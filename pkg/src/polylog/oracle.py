"""Brute-force reference polynomials.

Everything here is naive on purpose: independent sets and colourings are
enumerated outright, orientations are counted one by one, and chromatic
polynomials come from deletion-contraction.  Polynomials are plain lists of
Fractions, lowest degree first.  None of this shares code with the ratio
recursions it is used to check.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .graph import Graph
from .series import TruncSeries

MAX_VERTICES = 24
MAX_ORIENT_EDGES = 22
MAX_COLOURINGS = 10**6
MAX_SUBSET_EDGES = 24


class OracleRefusal(ValueError):
    """The instance is too large, or degenerate, for brute force."""


def _nbr_bits(G: Graph) -> list[int]:
    bits = [0] * G.n
    for u, v in G.edges:
        bits[u] |= 1 << v
        bits[v] |= 1 << u
    return bits


def independent_sets(G: Graph):
    """Yield every independent set of ``G`` as a tuple of vertices."""
    if G.n > MAX_VERTICES:
        raise OracleRefusal(f"n={G.n} exceeds {MAX_VERTICES} vertices")
    nb = _nbr_bits(G)
    chosen: list[int] = []

    def rec(i, blocked):
        if i == G.n:
            yield tuple(chosen)
            return
        yield from rec(i + 1, blocked)
        if not blocked >> i & 1:
            chosen.append(i)
            yield from rec(i + 1, blocked | nb[i])
            chosen.pop()

    yield from rec(0, 0)


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_eval(p: list, t):
    acc = 0
    for c in reversed(p):
        acc = acc * t + c
    return acc


def exact_independence_poly(G: Graph) -> list:
    """Coefficient k = number of independent sets of size k."""
    coeffs = [Fraction(0)] * (G.n + 1)
    for s in independent_sets(G):
        coeffs[len(s)] += 1
    return _trim(coeffs)


def exact_sfo_poly(G: Graph) -> list:
    """``sum over independent S of prod_{v in S} (-t^deg(v))`` with full-graph degrees."""
    if G.n and G.min_degree == 0:
        raise OracleRefusal("isolated vertices make the sink-free polynomial degenerate")
    coeffs = [Fraction(0)] * (2 * G.m + 1)
    for s in independent_sets(G):
        d = sum(G.degree(v) for v in s)
        coeffs[d] += (-1) ** len(s)
    return _trim(coeffs)


def count_sfo(G: Graph) -> int:
    """Number of sink-free orientations, by checking all ``2^m`` orientations.

    Bit ``i`` of an orientation code set means edge ``(u, v)``, ``u < v``,
    points ``u -> v``.
    """
    if G.m > MAX_ORIENT_EDGES:
        raise OracleRefusal(f"m={G.m} exceeds {MAX_ORIENT_EDGES} edges")
    low = [0] * G.n  # edges where v is the smaller endpoint
    high = [0] * G.n
    for i, (u, v) in enumerate(G.edges):
        low[u] |= 1 << i
        high[v] |= 1 << i
    codes = np.arange(1 << G.m, dtype=np.int64)
    ok = np.ones(codes.shape, dtype=bool)
    for v in range(G.n):
        # v is a sink iff every incident edge points into v
        sink = ((codes & low[v]) == 0) & ((codes & high[v]) == high[v])
        ok &= ~sink
    return int(ok.sum())


@lru_cache(maxsize=None)
def _chrom_cached(n: int, edges: frozenset) -> tuple:
    # chi(G) = chi(G - e) - chi(G / e), simple graphs throughout
    if not edges:
        return tuple([0] * n + [1])
    e = max(edges)
    u, v = e
    rest = edges - {e}
    deleted = _chrom_cached(n, rest)
    # contract v into u, then relabel so vertices stay 0..n-2
    merged = set()
    for a, b in rest:
        a = u if a == v else a
        b = u if b == v else b
        a = a - 1 if a > v else a
        b = b - 1 if b > v else b
        merged.add((min(a, b), max(a, b)))
    contracted = _chrom_cached(n - 1, frozenset(merged))
    out = list(deleted)
    for i, c in enumerate(contracted):
        out[i] -= c
    return tuple(out)


def exact_chromatic(G: Graph) -> list:
    """Coefficients of ``chi(G; q)`` in ``q`` (integers)."""
    return list(_chrom_cached(G.n, frozenset(G.edges)))


def chromatic_to_p(chi: list) -> list:
    """``P(z) = (-z)^n chi(-1/z)`` from chromatic coefficients."""
    n = len(chi) - 1
    p = [Fraction(0)] * (n + 1)
    for j, c in enumerate(chi):
        p[n - j] += Fraction((-1) ** (n + j) * c)
    return _trim(p)


def exact_p_poly(G: Graph) -> list:
    return chromatic_to_p(exact_chromatic(G))


def exact_hom_poly(G: Graph, A) -> list:
    """``q^{-n} hom(G, J + x(A - J))`` by summing over all ``q^n`` maps."""
    q = len(A)
    if q ** G.n > MAX_COLOURINGS:
        raise OracleRefusal(f"q^n = {q}^{G.n} colourings is too many")
    A = [[Fraction(a) for a in row] for row in A]
    total = [Fraction(0)] * (G.m + 1)
    for phi in product(range(q), repeat=G.n):
        p = [Fraction(1)]
        for u, v in G.edges:
            a = A[phi[u]][phi[v]]
            p = poly_mul(p, [Fraction(1), a - 1])
        for k, c in enumerate(p):
            total[k] += c
    scale = Fraction(1, q ** G.n)
    return _trim([c * scale for c in total])


def formal_log(p: list, m: int) -> TruncSeries:
    """Order-``m`` Taylor polynomial of ``log p`` for ``p(0) = 1``.

    From ``p * L' = p'``: ``k L_k = k p_k - sum_{j<k} j L_j p_{k-j}``.
    """
    p = [Fraction(c) for c in p]
    if not p or p[0] != 1:
        raise OracleRefusal("formal_log needs constant term 1")
    p = p + [Fraction(0)] * max(0, m + 1 - len(p))
    L = [Fraction(0)] * (m + 1)
    for k in range(1, m + 1):
        acc = k * p[k]
        for j in range(1, k):
            acc -= j * L[j] * p[k - j]
        L[k] = acc / k
    return TruncSeries(L, "exact")


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _forest_path(G: Graph, F: list, a: int, b: int):
    """Edges on the path from a to b inside the forest F, or None."""
    adj: dict[int, list] = {}
    for i in F:
        u, v = G.edges[i]
        adj.setdefault(u, []).append((v, i))
        adj.setdefault(v, []).append((u, i))
    prev = {a: None}
    todo = [a]
    while todo:
        x = todo.pop()
        for y, i in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, i)
                todo.append(y)
    if b not in prev:
        return None
    path = []
    while b != a:
        x, i = prev[b]
        path.append(i)
        b = x
    return path


def edge_subsets(G: Graph):
    if G.m > MAX_SUBSET_EDGES:
        raise OracleRefusal(f"m={G.m} exceeds {MAX_SUBSET_EDGES} edges")
    for code in range(1 << G.m):
        yield [i for i in range(G.m) if code >> i & 1]


def is_forest(G: Graph, F) -> bool:
    parent = list(range(G.n))
    for i in F:
        u, v = G.edges[i]
        ru, rv = _find(parent, u), _find(parent, v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def is_broken_circuit_free(G: Graph, rank, F) -> bool:
    """Forest ``F`` with no outside edge closing a cycle as its largest edge."""
    inside = set(F)
    for f in range(G.m):
        if f in inside:
            continue
        path = _forest_path(G, F, *G.edges[f])
        if path is not None and all(rank[f] > rank[i] for i in path):
            return False
    return True


def bcf_forest_poly(G: Graph, order=None) -> list:
    """Generating function of broken-circuit-free forests by edge count."""
    rank = order.rank if order is not None else list(range(G.m))
    coeffs = [Fraction(0)] * (G.m + 1)
    for F in edge_subsets(G):
        if is_forest(G, F) and is_broken_circuit_free(G, rank, F):
            coeffs[len(F)] += 1
    return _trim(coeffs)
