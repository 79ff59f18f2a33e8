import random
from fractions import Fraction as F

import pytest

from polylog.chromatic import _Memo, log_p, p_edge_in_ratio, ratio_chrom
from polylog.graph import Graph, GraphError, VertexMask
from polylog.oracle import bcf_forest_poly, exact_p_poly, formal_log
from polylog.series import FLOAT, TruncSeries, mul_trunc, recip_one_plus
from polylog.telescope import telescoped_product
from polylog.trees import EdgeOrder

from conftest import atlas_graphs, complete, cycle

K2 = Graph(2, [(0, 1)])
TRI = complete(3)


def S(*cs):
    return TruncSeries([F(c) for c in cs])


def test_ratio_examples():
    assert ratio_chrom(Graph(1, []), None, VertexMask(1), 0, 3) == S(1, 0, 0, 0)
    for v in (0, 1):
        assert ratio_chrom(K2, None, VertexMask(2), v, 2) == S(1, -1, 1)
    # P(K2)/P(K3) = (1+z)/(1+3z+2z^2) = 1/(1+2z)
    assert ratio_chrom(TRI, None, VertexMask(3), 0, 2) == S(1, -2, 4)


def test_ratio_is_quotient_of_oracle_polynomials():
    # R_{V,v} = P(G - v) / P(G), by formal division of the oracle polynomials
    for G in atlas_graphs(5, connected=True, min_n=2)[::3]:
        for v in range(G.n):
            keep = [u for u in range(G.n) if u != v]
            rl = {u: i for i, u in enumerate(keep)}
            H = Graph(len(keep), [(rl[a], rl[b]) for a, b in G.edges if v not in (a, b)])
            m = 4
            p_g = TruncSeries(exact_p_poly(G)).truncate(m)
            p_h = TruncSeries(exact_p_poly(H)).truncate(m)
            inv = recip_one_plus(p_g - TruncSeries.one(0), m)
            assert ratio_chrom(G, None, VertexMask(G.n), v, m) == mul_trunc(p_h, inv, m)


def test_p_edge_in_ratio_examples():
    assert p_edge_in_ratio(K2, None, 0, 2) == S(0, 1, -1)
    for e in range(3):
        assert p_edge_in_ratio(TRI, None, e, 1) == S(0, 1)
    assert p_edge_in_ratio(TRI, None, 0, 0) == S(0)


def test_log_examples():
    assert log_p(K2, 2) == S(0, 1, F(-1, 2))
    assert log_p(TRI, 2) == S(0, 3, F(-5, 2))
    assert log_p(Graph(4, []), 3) == S(0, 0, 0, 0)


def test_frozen_oracle_values():
    # oracle: formal log of P(C5; z) from deletion-contraction
    assert log_p(cycle(5), 5) == S(0, 5, F(-5, 2), F(5, 3), F(-9, 4), 5)


def test_matches_oracle_and_is_order_invariant():
    rng = random.Random(8)
    for G in rng.sample(atlas_graphs(6, connected=True, min_n=3), 25):
        ref = formal_log(exact_p_poly(G), 4)
        assert log_p(G, 4) == ref
        for _ in range(3):
            assert log_p(G, 4, EdgeOrder.shuffled(G, rng)) == ref


def test_telescoped_product_permutation_invariant():
    # the telescoped product of ratios over a vertex set does not depend on
    # the order in which the vertices are removed
    rng = random.Random(2)
    G = complete(5)
    memo = _Memo(G, EdgeOrder.default(G), "exact", 4)
    vs = [0, 2, 3, 4]
    base = telescoped_product(memo.ratio, VertexMask(G.n), vs, 3)
    for _ in range(6):
        rng.shuffle(vs)
        assert telescoped_product(memo.ratio, VertexMask(G.n), vs, 3) == base


def test_whitney_forest_count():
    # P counts broken-circuit-free forests by size, for any edge order
    rng = random.Random(4)
    for G in atlas_graphs(5):
        assert bcf_forest_poly(G) == exact_p_poly(G)
        assert bcf_forest_poly(G, EdgeOrder.shuffled(G, rng)) == exact_p_poly(G)


def test_float_backend():
    G = complete(5)
    exact = log_p(G, 4)
    approx = log_p(G, 4, kind=FLOAT)
    assert approx.kind == FLOAT
    assert list(approx.coeffs) == pytest.approx([float(c) for c in exact.coeffs], rel=1e-12)


def test_bad_edge_order_rejected():
    with pytest.raises(GraphError):
        log_p(TRI, 2, EdgeOrder([0, 1]))
