"""Bounded-size subtree enumeration and broken-edge computations.

Subtrees containing a fixed anchor (a vertex or an edge) form a graph whose
nodes differ by one edge.  Each subtree ``T`` gets an identifier
``(e_1, ..., e_k)``: ``e_k`` is the largest leaf edge whose removal keeps the
anchor in the tree, and the prefix is the identifier of ``T - e_k`` (the
parent).  Parent links form a spanning tree of that graph, so a depth-first
walk over it visits each subtree exactly once.

Identifiers compare edges by edge index.  Broken edges use an explicit
:class:`EdgeOrder`.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .graph import Graph, GraphError, VertexMask

SubtreeID = tuple  # tuple[int, ...] of edge indices


class TreeError(ValueError):
    """An edge set that is not a tree, or that misses its anchor."""


class EdgeOrder:
    """Total order on the edges of a graph, stored as ``rank[edge_index]``."""

    __slots__ = ("rank", "sequence")

    def __init__(self, sequence: Sequence[int]):
        seq = tuple(int(e) for e in sequence)
        if sorted(seq) != list(range(len(seq))):
            raise GraphError("edge order must be a permutation of the edge indices")
        rank = [0] * len(seq)
        for r, e in enumerate(seq):
            rank[e] = r
        self.sequence = seq
        self.rank = tuple(rank)

    @classmethod
    def default(cls, G: Graph) -> EdgeOrder:
        """Lexicographic order on ``(u, v)`` endpoint pairs, i.e. edge index order."""
        return cls(range(G.m))

    @classmethod
    def shuffled(cls, G: Graph, rng: random.Random) -> EdgeOrder:
        seq = list(range(G.m))
        rng.shuffle(seq)
        return cls(seq)

    @classmethod
    def from_pairs(cls, G: Graph, pairs: Iterable[Sequence[int]]) -> EdgeOrder:
        """Order given as endpoint pairs listed from smallest to largest."""
        try:
            return cls([G.edge_id(int(u), int(v)) for u, v in pairs])
        except KeyError as exc:
            raise GraphError(f"edge {exc.args[0]} is not in the graph") from None

    def __len__(self) -> int:
        return len(self.rank)

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeOrder) and self.rank == other.rank

    def __repr__(self) -> str:
        return f"EdgeOrder({list(self.sequence)})"


@dataclass(frozen=True)
class Anchor:
    """Either a vertex or an edge that every enumerated tree must contain."""

    kind: str
    index: int

    @classmethod
    def vertex(cls, v: int) -> Anchor:
        return cls("vertex", v)

    @classmethod
    def edge(cls, e: int) -> Anchor:
        return cls("edge", e)

    @property
    def is_vertex(self) -> bool:
        return self.kind == "vertex"

    def check(self, G: Graph) -> None:
        limit = G.n if self.is_vertex else G.m
        if not 0 <= self.index < limit:
            raise GraphError(f"anchor {self.kind} {self.index} not in graph")


@dataclass(frozen=True)
class Subtree:
    """A tree together with its identifier.

    ``vertices`` lists the anchor first (both endpoints for an edge anchor),
    then the remaining vertices in discovery order.
    """

    id: SubtreeID
    vertices: tuple

    @property
    def edge_count(self) -> int:
        return len(self.id)

    @property
    def edges(self) -> frozenset:
        return frozenset(self.id)


class _State:
    # mutable tree being grown by the DFS; sets stay small (<= m+1 entries)
    __slots__ = ("G", "removed", "anchor", "edges", "verts", "in_tree", "tdeg", "tedge")

    def __init__(self, G: Graph, mask: VertexMask | None, anchor: Anchor):
        self.G = G
        self.removed = mask.removed if mask is not None else bytes(G.n)
        self.anchor = anchor
        self.edges: list[int] = []
        self.verts: list[int] = []
        self.in_tree: set[int] = set()
        self.tdeg: dict[int, int] = {}
        # tree edges at each vertex, in insertion order
        self.tedge: dict[int, list[int]] = {}
        if anchor.is_vertex:
            v = anchor.index
            if self.removed[v]:
                raise GraphError(f"anchor vertex {v} is masked out")
            self._add_vertex(v)
        else:
            f = anchor.index
            a, b = G.edges[f]
            if self.removed[a] or self.removed[b]:
                raise GraphError(f"anchor edge {f} is masked out")
            self._add_vertex(a)
            self.add(f, a, b)

    def _add_vertex(self, v: int) -> None:
        self.verts.append(v)
        self.in_tree.add(v)
        self.tdeg[v] = 0
        self.tedge[v] = []

    def add(self, e: int, u: int, w: int) -> None:
        self._add_vertex(w)
        self.edges.append(e)
        self.tdeg[u] += 1
        self.tdeg[w] = 1
        self.tedge[u].append(e)
        self.tedge[w].append(e)

    def remove_last(self) -> None:
        e = self.edges.pop()
        w = self.verts.pop()
        u = self.G.other(e, w)
        self.in_tree.discard(w)
        del self.tdeg[w]
        del self.tedge[w]
        self.tdeg[u] -= 1
        self.tedge[u].pop()

    def snapshot(self) -> Subtree:
        return Subtree(tuple(self.edges), tuple(self.verts))

    def boundary(self, allowed: Callable[[int], bool] | None = None) -> list[tuple[int, int, int]]:
        """Edges leaving V(T) inside the masked graph, as ``(e, inside, outside)``."""
        G, removed, in_tree = self.G, self.removed, self.in_tree
        out = []
        for x in self.verts:
            for e, w in G.links[x]:
                if w in in_tree or removed[w]:
                    continue
                if allowed is not None and not allowed(e):
                    continue
                out.append((e, x, w))
        out.sort()
        return out

    def _top_two_removable(self):
        # largest two removable leaf edges, tagged with their leaf vertex
        anchor = self.anchor
        best = [(-1, -1), (-1, -1)]
        for x in self.verts:
            if self.tdeg[x] != 1:
                continue
            if anchor.is_vertex and x == anchor.index:
                continue
            e = self.tedge[x][0]
            if not anchor.is_vertex and e == anchor.index:
                continue
            if e > best[0][0]:
                best = [(e, x), best[0]]
            elif e > best[1][0]:
                best[1] = (e, x)
        return best

    def children(self, allowed=None) -> list[tuple[int, int, int]]:
        """Boundary edges ``e`` for which ``T + e`` has parent ``T``.

        The new leaf is always removable, so ``T + e`` has parent ``T`` iff
        ``e`` beats every removable leaf edge of ``T`` whose leaf vertex is
        not the attachment point (that one stops being a leaf).
        """
        top = self._top_two_removable()
        kids = []
        for e, u, w in self.boundary(allowed):
            rival = top[0][0] if top[0][1] != u else top[1][0]
            if e > rival:
                kids.append((e, u, w))
        return kids


class SubtreeWalk:
    """Depth-first walk over the subtrees containing ``anchor``.

    Iterating yields every subtree of the masked graph with 1 to
    ``max_edges`` edges, parents before children.  Calling :meth:`prune`
    right after a tree is yielded skips all of its descendants, which is
    exact whenever the property being filtered is inherited by supertrees.

    ``allowed`` restricts the usable edges (the anchor edge is always used);
    since parents are subsets of their children this keeps the walk
    complete on the allowed subgraph.  The caller may mutate the mask while
    the walk is suspended as long as it is restored before resuming.
    """

    def __init__(self, G, mask, anchor, max_edges, allowed=None):
        anchor.check(G)
        self.G = G
        self.mask = mask
        self.anchor = anchor
        self.max_edges = max_edges
        self.allowed = allowed
        self._pruned = False

    def prune(self) -> None:
        self._pruned = True

    def __iter__(self) -> Iterator[Subtree]:
        if self.max_edges < 1:
            return
        allowed = self.allowed
        st = _State(self.G, self.mask, self.anchor)
        if not self.anchor.is_vertex:
            self._pruned = False
            yield st.snapshot()
            if self.max_edges == 1 or self._pruned:
                return
        stack = [[st.children(allowed), 0]]
        while stack:
            frame = stack[-1]
            kids, i = frame
            if i < len(kids):
                frame[1] = i + 1
                e, u, w = kids[i]
                st.add(e, u, w)
                self._pruned = False
                yield st.snapshot()
                if len(st.edges) < self.max_edges and not self._pruned:
                    stack.append([st.children(allowed), 0])
                else:
                    st.remove_last()
            else:
                stack.pop()
                if stack:
                    st.remove_last()


def iter_subtrees(
    G: Graph,
    mask: VertexMask | None,
    anchor: Anchor,
    max_edges: int,
    allowed: Callable[[int], bool] | None = None,
) -> Iterator[Subtree]:
    """Yield every subtree of the masked graph containing ``anchor``.

    Trees have between 1 and ``max_edges`` edges and come out in depth-first
    order over the parent tree.  See :class:`SubtreeWalk` for ``allowed``
    and for pruning.
    """
    return iter(SubtreeWalk(G, mask, anchor, max_edges, allowed))


def enumerate_subtrees(G, mask, anchor, max_edges, visitor, allowed=None) -> bool:
    """Call ``visitor(tree)`` for each subtree; returns False if the visitor aborted.

    The visitor aborts the walk by returning ``False`` (``None`` continues).
    """
    for T in iter_subtrees(G, mask, anchor, max_edges, allowed):
        if visitor(T) is False:
            return False
    return True


def count_subtrees(G: Graph, anchor: Anchor, max_edges: int, mask=None) -> Counter:
    """Number of subtrees per edge count."""
    return Counter(T.edge_count for T in iter_subtrees(G, mask, anchor, max_edges))


def _tree_structure(G: Graph, edges: Iterable[int]):
    es = list(edges)
    if len(set(es)) != len(es):
        raise TreeError("repeated edge")
    adj: dict[int, list[int]] = {}
    for e in es:
        u, v = G.edges[e]
        adj.setdefault(u, []).append(e)
        adj.setdefault(v, []).append(e)
    if es:
        if len(adj) != len(es) + 1:
            raise TreeError("edge set is not a tree")
        start = next(iter(adj))
        seen = {start}
        todo = [start]
        while todo:
            x = todo.pop()
            for e in adj[x]:
                y = G.other(e, x)
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        if len(seen) != len(adj):
            raise TreeError("edge set is not connected")
    return adj


def id_of(G: Graph, anchor: Anchor, T: Iterable[int]) -> SubtreeID:
    """Identifier of the tree with edge set ``T`` relative to ``anchor``."""
    anchor.check(G)
    edges = set(T)
    adj = _tree_structure(G, edges)
    if anchor.is_vertex:
        if edges and anchor.index not in adj:
            raise TreeError("tree does not contain the anchor vertex")
    elif anchor.index not in edges:
        raise TreeError("tree does not contain the anchor edge")
    deg = {x: len(es) for x, es in adj.items()}
    live = {x: set(es) for x, es in adj.items()}
    rev = []
    while len(edges) > 1:
        best = None
        for x, d in deg.items():
            if d != 1:
                continue
            if anchor.is_vertex and x == anchor.index:
                continue
            (e,) = live[x]
            if not anchor.is_vertex and e == anchor.index:
                continue
            if best is None or e > best[0]:
                best = (e, x)
        e, x = best
        rev.append(e)
        edges.discard(e)
        y = G.other(e, x)
        del deg[x]
        del live[x]
        deg[y] -= 1
        live[y].discard(e)
    rev.extend(edges)
    return tuple(reversed(rev))


def boundary_edges(G: Graph, mask: VertexMask | None, T: Subtree) -> tuple[int, ...]:
    """Edges of the masked graph with exactly one endpoint in V(T)."""
    inside = set(T.vertices)
    removed = mask.removed if mask is not None else bytes(G.n)
    out = set()
    for x in T.vertices:
        for e in G.incident[x]:
            w = G.other(e, x)
            if w not in inside and not removed[w]:
                out.add(e)
    return tuple(sorted(out))


def _state_for(G: Graph, mask, anchor: Anchor, T: Subtree) -> _State:
    st = _State(G, mask, anchor)
    base = 0 if anchor.is_vertex else 1
    for e in T.id[base:]:
        a, b = G.edges[e]
        if a in st.in_tree and b not in st.in_tree:
            st.add(e, a, b)
        elif b in st.in_tree and a not in st.in_tree:
            st.add(e, b, a)
        else:
            raise TreeError("identifier prefix is not a tree grown from the anchor")
    return st


def children(G: Graph, mask: VertexMask | None, anchor: Anchor, T: Subtree) -> list[Subtree]:
    """Subtrees whose parent is ``T``, ascending by the added edge."""
    st = _state_for(G, mask, anchor, T)
    out = []
    for e, u, w in st.children():
        out.append(Subtree(T.id + (e,), T.vertices + (w,)))
    return out


def subtree_from_edges(G: Graph, anchor: Anchor, edges: Iterable[int]) -> Subtree:
    """Build the :class:`Subtree` (identifier and vertex order) for an edge set."""
    ident = id_of(G, anchor, edges)
    st = _state_for(G, None, anchor, Subtree(ident, ()))
    return Subtree(ident, tuple(st.verts))


def induced_chords(G: Graph, T: Subtree) -> list[int]:
    """Edges of ``G[V(T)]`` that are not tree edges."""
    inside = set(T.vertices)
    tree = set(T.id)
    out = []
    for x in T.vertices:
        for e in G.incident[x]:
            y = G.other(e, x)
            if x < y and y in inside and e not in tree:
                out.append(e)
    out.sort()
    return out


def broken_edges(G: Graph, order: EdgeOrder, T: Subtree) -> list[int]:
    """Chords ``f`` of ``T`` that are the largest edge on the cycle of ``T + f``.

    Each fundamental cycle is found by climbing from both chord endpoints to
    their lowest common ancestor in ``T`` rooted at its first vertex.
    """
    chords = induced_chords(G, T)
    if not chords:
        return []
    rank = order.rank
    root = T.vertices[0]
    adj: dict[int, list[int]] = {x: [] for x in T.vertices}
    for e in T.id:
        u, v = G.edges[e]
        adj[u].append(e)
        adj[v].append(e)
    parent = {root: (None, -1)}
    depth = {root: 0}
    todo = [root]
    while todo:
        x = todo.pop()
        for e in adj[x]:
            y = G.other(e, x)
            if y not in depth:
                depth[y] = depth[x] + 1
                parent[y] = (x, e)
                todo.append(y)
    out = []
    for f in chords:
        a, b = G.edges[f]
        top = -1
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            up, e = parent[a]
            if rank[e] > top:
                top = rank[e]
            a = up
        if rank[f] > top:
            out.append(f)
    return out


def is_bcf(G: Graph, order: EdgeOrder, T: Subtree) -> bool:
    """True iff ``T`` has no broken edge, i.e. contains no broken circuit."""
    return not broken_edges(G, order, T)
