"""Simple undirected graphs in adjacency-list form, plus vertex masks.

Vertices are dense integers ``0..n-1``.  A :class:`VertexMask` marks removed
vertices so that recursions can work on induced subgraphs ``G[S]`` without
copying the graph.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph data."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Graph:
    """Immutable simple graph.

    ``edges`` is the lexicographically sorted list of ``(u, v)`` pairs with
    ``u < v``; an edge's position in that list is its edge index.
    """

    __slots__ = ("n", "adjacency", "edges", "edge_index", "incident", "links", "_degrees")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        pairs = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            key = (min(u, v), max(u, v))
            if key in pairs:
                raise GraphError(f"duplicate edge {key}")
            pairs.add(key)
        self.n = n
        self.edges = tuple(sorted(pairs))
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        adj = [[] for _ in range(n)]
        inc = [[] for _ in range(n)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append(v)
            adj[v].append(u)
            inc[u].append(i)
            inc[v].append(i)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        # incident edge ids per vertex, ordered like the neighbours
        self.incident = tuple(
            tuple(sorted(ids, key=lambda i, w=w: self.other(i, w))) for w, ids in enumerate(inc)
        )
        # (edge id, neighbour) pairs per vertex, in the same order
        self.links = tuple(tuple((i, self.other(i, w)) for i in ids) for w, ids in enumerate(self.incident))
        self._degrees = tuple(len(a) for a in self.adjacency)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max(self._degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self._degrees, default=0)

    def degree(self, v: int) -> int:
        return self._degrees[v]

    def other(self, e: int, w: int) -> int:
        """The endpoint of edge ``e`` that is not ``w``."""
        u, v = self.edges[e]
        return v if u == w else u

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(min(u, v), max(u, v))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __reduce__(self):
        return (Graph, (self.n, self.edges))

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


def degree(G: Graph, v: int) -> int:
    """Degree of ``v`` in the full graph, never in a masked subgraph."""
    return G.degree(v)


class VertexMask:
    """Removed-vertex set with O(1) membership and LIFO push/pop.

    Represents the surviving vertex set ``S = V minus removed``.
    """

    __slots__ = ("removed", "_stack")

    def __init__(self, n: int, removed: Iterable[int] = ()):
        self.removed = bytearray(n)
        self._stack: list[int] = []
        for v in removed:
            self.push(v)

    @property
    def removed_count(self) -> int:
        return len(self._stack)

    def is_removed(self, v: int) -> bool:
        return bool(self.removed[v])

    def alive(self, v: int) -> bool:
        return not self.removed[v]

    def push(self, v: int) -> None:
        if self.removed[v]:
            raise GraphError(f"vertex {v} removed twice")
        self.removed[v] = 1
        self._stack.append(v)

    def pop(self) -> int:
        v = self._stack.pop()
        self.removed[v] = 0
        return v

    def copy(self) -> VertexMask:
        c = VertexMask(len(self.removed))
        c.removed[:] = self.removed
        c._stack = list(self._stack)
        return c

    def key(self) -> frozenset:
        """Hashable snapshot of the removed set (cost proportional to its size)."""
        return frozenset(self._stack)

    def alive_vertices(self) -> list[int]:
        return [v for v, r in enumerate(self.removed) if not r]


def neighbors_in(G: Graph, mask: VertexMask, v: int) -> tuple[int, ...]:
    """Ascending neighbours of ``v`` that survive ``mask``."""
    if mask.removed[v]:
        raise GraphError(f"vertex {v} is masked out")
    removed = mask.removed
    return tuple(u for u in G.adjacency[v] if not removed[u])


def load_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format (``#`` starts a comment line)."""
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphParseError("negative vertex or edge count", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphParseError(f"vertex index out of range 0..{n - 1}", lineno)
        if a == b:
            raise GraphParseError(f"self-loop at vertex {a}", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphParseError(f"duplicate edge {a} {b}", lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise GraphParseError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphParseError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def read_graph(path) -> Graph:
    return load_edge_list(Path(path).read_text())
