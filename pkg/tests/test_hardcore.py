import random
from fractions import Fraction as F

import pytest

from polylog.graph import Graph, VertexMask
from polylog.hardcore import log_z_hc, ratio_hc
from polylog.oracle import exact_independence_poly, formal_log
from polylog.series import FLOAT, TruncSeries

from conftest import atlas_graphs, cycle, path, petersen


def S(*cs):
    return TruncSeries([F(c) for c in cs])


def test_ratio_examples():
    assert ratio_hc(Graph(1, []), VertexMask(1), 0, 4) == S(0, 1, 0, 0, 0)
    assert ratio_hc(Graph(2, [(0, 1)]), VertexMask(2), 0, 3) == S(0, 1, -1, 1)
    assert ratio_hc(path(3), VertexMask(3), 1, 3) == S(0, 1, -2, 3)


def test_ratio_constant_term_vanishes():
    for G in atlas_graphs(5, connected=True):
        for v in range(G.n):
            assert ratio_hc(G, VertexMask(G.n), v, 4)[0] == 0


def test_log_examples():
    assert log_z_hc(Graph(0, []), 3) == S(0, 0, 0, 0)
    assert log_z_hc(Graph(1, []), 3) == S(0, 1, F(-1, 2), F(1, 3))
    assert log_z_hc(Graph(2, [(0, 1)]), 2) == S(0, 2, -2)


def test_frozen_oracle_values():
    # oracle: log(1 + 5x + 5x^2) for C5 and the Petersen independence polynomial
    assert log_z_hc(cycle(5), 6) == S(0, 5, F(-15, 2), F(50, 3), F(-175, 4), 125, -375)
    assert log_z_hc(petersen(), 5) == S(0, 10, -20, F(190, 3), -245, 1050)


def test_matches_oracle_on_small_graphs():
    for G in atlas_graphs(5):
        assert log_z_hc(G, 5) == formal_log(exact_independence_poly(G), 5)


def test_neighbour_order_does_not_matter():
    rng = random.Random(3)
    for G in atlas_graphs(6, connected=True, min_n=5)[::7]:
        for v in range(G.n):
            base = ratio_hc(G, VertexMask(G.n), v, 6)
            assert ratio_hc(G, VertexMask(G.n), v, 6, rng=rng) == base


def test_masked_ratio_is_subgraph_ratio():
    # R_{S,v} on the masked graph equals the ratio on the induced subgraph
    G = petersen()
    mask = VertexMask(G.n, [0, 5])
    keep = [v for v in range(G.n) if v not in (0, 5)]
    relabel = {v: i for i, v in enumerate(keep)}
    H = Graph(len(keep), [(relabel[u], relabel[v]) for u, v in G.edges if u in relabel and v in relabel])
    assert ratio_hc(G, mask, 1, 6) == ratio_hc(H, VertexMask(H.n), relabel[1], 6)


def test_float_backend():
    exact = log_z_hc(petersen(), 5)
    approx = log_z_hc(petersen(), 5, FLOAT)
    assert approx.kind == FLOAT
    assert list(approx.coeffs) == pytest.approx([float(c) for c in exact.coeffs], rel=1e-12)
