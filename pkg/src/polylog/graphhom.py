"""Taylor coefficients of ``log H(G; x)``, ``H(G; x) = q^-n hom(G, J + x(A - J))``.

``H`` is a forest generating function: each tree ``T`` of ``G`` carries the
weight

    w_T = q^-(|T|+1) x^|T| sum_phi prod_{ij in T} (A - J)_{phi(i) phi(j)}
                               prod_{ij in B(T)} (1 + x (A_{phi(i) phi(j)} - 1))

over colourings ``phi: V(T) -> [q]``, where ``B(T)`` are the broken edges
of ``T``.  The ratio recursion is the chromatic one with every tree allowed
and ``z^|T|`` replaced by ``w_T``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import partial
from itertools import product
from pathlib import Path
from typing import Sequence

from .graph import Graph, GraphError, VertexMask
from .parallel import ordered_map
from .series import (
    EXACT,
    TruncSeries,
    integrate_logderiv,
    mul_trunc,
    parse_scalar,
    sum_series,
    to_scalar,
)
from .telescope import RatioCache, telescoped_tree_sum
from .trees import Anchor, EdgeOrder, Subtree, broken_edges, subtree_from_edges


class MatrixError(ValueError):
    """Malformed or non-symmetric interaction matrix."""


class SymMatrix:
    """Symmetric ``q x q`` matrix of scalars, ``q >= 2``."""

    __slots__ = ("q", "rows")

    def __init__(self, rows: Sequence[Sequence], kind: str = EXACT):
        q = len(rows)
        if q < 2:
            raise MatrixError("matrix dimension must be at least 2")
        if any(len(r) != q for r in rows):
            raise MatrixError("matrix must be square")
        conv = tuple(tuple(to_scalar(c, kind) for c in r) for r in rows)
        for i in range(q):
            for j in range(i):
                if conv[i][j] != conv[j][i]:
                    raise MatrixError(f"matrix is not symmetric at ({i}, {j})")
        self.q = q
        self.rows = conv

    @classmethod
    def ones(cls, q: int) -> SymMatrix:
        """The all-ones matrix ``J``."""
        return cls([[1] * q for _ in range(q)])

    @classmethod
    def complete(cls, q: int) -> SymMatrix:
        """Adjacency matrix of ``K_q``; ``hom(G, A(K_q))`` counts proper q-colourings."""
        return cls([[0 if i == j else 1 for j in range(q)] for i in range(q)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SymMatrix({[list(map(str, r)) for r in self.rows]})"

    def to_text(self) -> str:
        lines = [str(self.q)] + [" ".join(str(c) for c in r) for r in self.rows]
        return "\n".join(lines) + "\n"


def load_matrix(text: str, kind: str = EXACT) -> SymMatrix:
    """Parse ``q`` on the first line, then ``q`` rows of ``q`` rationals."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixError("empty matrix file")
    try:
        q = int(lines[0])
    except ValueError:
        raise MatrixError(f"first line must be the dimension q, got {lines[0]!r}") from None
    if len(lines) != q + 1:
        raise MatrixError(f"expected {q} rows after the dimension, got {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            rows.append([parse_scalar(tok, kind) for tok in ln.split()])
        except (ValueError, ZeroDivisionError):
            raise MatrixError(f"bad matrix entry in row {ln!r}") from None
    return SymMatrix(rows, kind)


def read_matrix(path, kind: str = EXACT) -> SymMatrix:
    return load_matrix(Path(path).read_text(), kind)


def _order(G: Graph, order: EdgeOrder | None) -> EdgeOrder:
    if order is None:
        return EdgeOrder.default(G)
    if len(order) != G.m:
        raise GraphError("edge order does not match the graph")
    return order


def tree_weight(
    G: Graph, order: EdgeOrder | None, A: SymMatrix, T: Subtree, m: int, kind: str = EXACT
) -> TruncSeries:
    """Order-``m`` truncation of ``w_T``, by summing over all colourings of ``V(T)``."""
    if m < 0:
        raise ValueError("order must be non-negative")
    order = _order(G, order)
    k = T.edge_count
    if k > m:
        return TruncSeries.zero(m, kind)
    q = A.q
    # A - J = N / L with integer N in exact mode (L = 1 for floats), so the
    # colouring sum runs on plain numbers and is divided out once at the end
    if kind == EXACT:
        D = [[Fraction(a) - 1 for a in row] for row in A.rows]
        L = math.lcm(*[d.denominator for row in D for d in row])
        N = [[int(d * L) for d in row] for row in D]
    else:
        L = 1
        N = [[float(a) - 1.0 for a in row] for row in A.rows]
    pos = {v: i for i, v in enumerate(T.vertices)}
    tree = [(pos[a], pos[b]) for a, b in (G.edges[e] for e in T.id)]
    broken = [(pos[a], pos[b]) for a, b in (G.edges[f] for f in broken_edges(G, order, T))]
    top = m - k  # broken-edge factors only matter up to x^(m-k)
    total = [0] * (top + 1)
    for phi in product(range(q), repeat=len(pos)):
        c = 1
        for i, j in tree:
            c *= N[phi[i]][phi[j]]
            if not c:
                break
        if not c:
            continue
        poly = [c] + [0] * top
        for i, j in broken:
            # multiply by L + N_ij x, highest degree first
            d = N[phi[i]][phi[j]]
            for s in range(top, 0, -1):
                poly[s] = L * poly[s] + d * poly[s - 1]
            poly[0] *= L
        for s, a in enumerate(poly):
            total[s] += a
    den = L ** (k + len(broken)) * q ** (k + 1)
    if kind == EXACT:
        scaled = [Fraction(a, den) for a in total]
    else:
        scaled = [a / den for a in total]
    return TruncSeries._raw(tuple([to_scalar(0, kind)] * k + scaled), kind)


class _Memo(RatioCache):
    # ratio cache plus tree weights keyed by edge set at the largest order seen
    def __init__(self, G, order, A, kind, budget):
        super().__init__(G, kind, budget, weight=self.tree_weight)
        self.order = order
        self.A = A
        self.weights: dict = {}

    def tree_weight(self, T: Subtree, m: int) -> TruncSeries:
        key = T.edges
        hit = self.weights.get(key)
        if hit is None or hit.order < m:
            hit = self.weights[key] = tree_weight(self.G, self.order, self.A, T, max(m, self.budget), self.kind)
        return hit if hit.order == m else hit.truncate(m)


def ratio_hom(
    G: Graph,
    A: SymMatrix,
    mask: VertexMask,
    v: int,
    m: int,
    order: EdgeOrder | None = None,
    kind: str = EXACT,
) -> TruncSeries:
    """Order-``m`` truncation of ``H(G[S-v]) / H(G[S])`` for the unmasked ``S``."""
    if mask.removed[v]:
        raise GraphError(f"vertex {v} is masked out")
    if m < 0:
        raise ValueError("order must be non-negative")
    return _Memo(G, _order(G, order), A, kind, m + mask.removed_count).ratio(mask, v, m)


def _rank_at_least(rank, r, f) -> bool:
    return rank[f] >= r


def _min_edge_term(memo: _Memo, m: int, e: int) -> TruncSeries:
    # trees whose smallest edge (in the edge order) is e: enumerate from e
    # using only edges ranked above it, which loses nothing since a tree's
    # parent uses a subset of its edges
    rank = memo.order.rank
    r = rank[e]

    def weight(T):
        if min(rank[f] for f in T.id) != r:
            raise AssertionError(f"tree {T.id} listed under edge {e} but its minimum differs")
        return memo.tree_weight(T, m).x_ddx()

    return telescoped_tree_sum(
        memo.G,
        VertexMask(memo.G.n),
        Anchor.edge(e),
        m,
        memo.ratio,
        weight=weight,
        allowed=partial(_rank_at_least, rank, r),
        kind=memo.kind,
    )


def log_h(
    G: Graph,
    A: SymMatrix,
    m: int,
    order: EdgeOrder | None = None,
    kind: str = EXACT,
    threads: int | None = 1,
) -> TruncSeries:
    """Order-``m`` Taylor polynomial of ``log H(G; x)``; independent of ``order``."""
    if m < 0:
        raise ValueError("order must be non-negative")
    order = _order(G, order)
    if G.m == 0 or m == 0:
        return TruncSeries.zero(m, kind)
    memo = _Memo(G, order, A, kind, m)
    terms = ordered_map(partial(_min_edge_term, memo, m), range(G.m), threads)
    return integrate_logderiv(sum_series(terms, m, kind))


def _components(G: Graph, F: Sequence[int]) -> list[list[int]]:
    # edge sets of the connected components of (V, F) that have an edge
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in F:
        u, v = G.edges[e]
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for e in F:
        groups.setdefault(find(G.edges[e][0]), []).append(e)
    return list(groups.values())


def _is_forest(G: Graph, F: Sequence[int]) -> bool:
    return len(F) + len(_components(G, F)) == len({x for e in F for x in G.edges[e]})


def forest_sum_of_weights(
    G: Graph, A: SymMatrix, order: EdgeOrder | None = None, kind: str = EXACT
) -> TruncSeries:
    """``sum over forests F of prod over components T of w_T``, by brute force.

    Returns the full polynomial (order ``|E|``); it equals ``H(G; x)``.
    """
    order = _order(G, order)
    m = G.m
    weights: dict[frozenset, TruncSeries] = {}
    terms = []
    for code in range(1 << m):
        F = [e for e in range(m) if code >> e & 1]
        if not _is_forest(G, F):
            continue
        term = TruncSeries.one(m, kind)
        for comp in _components(G, F):
            key = frozenset(comp)
            w = weights.get(key)
            if w is None:
                T = subtree_from_edges(G, Anchor.edge(min(comp)), comp)
                w = weights[key] = tree_weight(G, order, A, T, m, kind)
            term = mul_trunc(term, w, m)
        terms.append(term)
    return sum_series(terms, m, kind)


def _spanning_tree(G: Graph, rank, C: Sequence[int]) -> frozenset | None:
    # Kruskal by edge rank; None when C is not connected
    parent = {x: x for e in C for x in G.edges[e]}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for e in sorted(C, key=lambda f: rank[f]):
        u, v = G.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(e)
    if len(tree) != len(parent) - 1:
        return None
    return frozenset(tree)


def penrose_partition_check(
    G: Graph, order: EdgeOrder | None = None, vertices: Sequence[int] | None = None
) -> bool:
    """Check that connected edge sets split into intervals ``[T, T + B(T)]``.

    Every nonempty connected edge subset of ``G[vertices]`` (default: all of
    ``G``) is sent to its minimum spanning tree under ``order``.  The check
    passes iff the sets sent to each tree ``T`` are exactly the supersets of
    ``T`` inside ``T + B(T)``.
    """
    order = _order(G, order)
    rank = order.rank
    keep = set(range(G.n)) if vertices is None else set(vertices)
    usable = [e for e, (u, v) in enumerate(G.edges) if u in keep and v in keep]
    classes: dict[frozenset, set] = {}
    for code in range(1, 1 << len(usable)):
        C = frozenset(usable[i] for i in range(len(usable)) if code >> i & 1)
        T = _spanning_tree(G, rank, C)
        if T is not None:
            classes.setdefault(T, set()).add(C)
    for T, members in classes.items():
        B = broken_edges(G, order, subtree_from_edges(G, Anchor.edge(min(T)), T))
        interval = set()
        for code in range(1 << len(B)):
            interval.add(T | {B[i] for i in range(len(B)) if code >> i & 1})
        if members != interval:
            return False
    return True
