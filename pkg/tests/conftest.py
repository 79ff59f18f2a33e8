"""Shared graph fixtures: the networkx atlas, seeded random graphs, data files."""

from __future__ import annotations

import random
from functools import lru_cache
from pathlib import Path

import networkx as nx
import pytest

from polylog.graph import Graph

DATA = Path(__file__).parent / "data"


def from_nx(g) -> Graph:
    g = nx.convert_node_labels_to_integers(g)
    return Graph(g.number_of_nodes(), g.edges())


@lru_cache(maxsize=None)
def _atlas():
    return tuple(nx.graph_atlas_g())


def atlas_graphs(max_n: int, connected: bool = False, min_n: int = 1) -> list[Graph]:
    """All graphs up to isomorphism with ``min_n <= n <= max_n <= 7``."""
    out = []
    for g in _atlas():
        n = g.number_of_nodes()
        if n < min_n or n > max_n:
            continue
        if connected and not nx.is_connected(g):
            continue
        out.append(from_nx(g))
    return out


def random_bounded_degree(rng: random.Random, n: int, max_deg: int, p: float = 0.5) -> Graph:
    """Random simple graph on ``n`` vertices with all degrees at most ``max_deg``."""
    deg = [0] * n
    edges = []
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    for u, v in pairs:
        if deg[u] < max_deg and deg[v] < max_deg and rng.random() < p:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def random_min_degree3(rng: random.Random, max_n: int = 8) -> Graph:
    """Random graph with minimum degree >= 3 and ``4 <= n <= max_n``."""
    while True:
        n = rng.randint(4, max_n)
        p = rng.uniform(0.45, 0.9)
        g = nx.gnp_random_graph(n, p, seed=rng.randrange(2**31))
        if min(d for _, d in g.degree()) >= 3:
            return from_nx(g)


def random_cubic(rng: random.Random, n: int) -> Graph:
    return from_nx(nx.random_regular_graph(3, n, seed=rng.randrange(2**31)))


def random_sym_matrix(rng: random.Random, q: int, values=(0, 1, 2)) -> list[list[int]]:
    M = [[0] * q for _ in range(q)]
    for i in range(q):
        for j in range(i, q):
            M[i][j] = M[j][i] = rng.choice(values)
    return M


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    return from_nx(nx.petersen_graph())


def k33() -> Graph:
    return Graph(6, [(u, v) for u in range(3) for v in range(3, 6)])


@pytest.fixture
def data_dir() -> Path:
    return DATA


# one PASS/FAIL line per acceptance criterion, shown after the test run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
