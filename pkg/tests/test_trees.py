import random
from itertools import combinations

import pytest

from polylog.graph import Graph, VertexMask
from polylog.trees import (
    Anchor,
    EdgeOrder,
    TreeError,
    boundary_edges,
    broken_edges,
    children,
    count_subtrees,
    enumerate_subtrees,
    id_of,
    is_bcf,
    iter_subtrees,
    subtree_from_edges,
    SubtreeWalk,
)

from conftest import atlas_graphs, complete

# triangle on 0,1,2: edge 0 = (0,1), edge 1 = (0,2), edge 2 = (1,2)
TRI = Graph(3, [(0, 1), (0, 2), (1, 2)])
STAR = Graph(4, [(0, 1), (0, 2), (0, 3)])


def brute_trees(G, mask, anchor, max_edges):
    """Edge sets of all trees containing the anchor, by checking every subset."""
    alive = [e for e, (u, v) in enumerate(G.edges) if not mask.removed[u] and not mask.removed[v]]
    out = set()
    for k in range(1, max_edges + 1):
        for es in combinations(alive, k):
            verts = {x for e in es for x in G.edges[e]}
            if len(verts) != k + 1:
                continue
            try:
                subtree_from_edges(G, anchor, es)
            except TreeError:
                continue
            out.add(frozenset(es))
    return out


def test_id_examples():
    # single edge at a vertex anchor
    assert id_of(TRI, Anchor.vertex(0), [1]) == (1,)
    # path a-b-c anchored at b with e_ab < e_bc
    p = Graph(3, [(0, 1), (1, 2)])
    assert id_of(p, Anchor.vertex(1), [0, 1]) == (0, 1)
    assert id_of(STAR, Anchor.vertex(0), [0, 1, 2]) == (0, 1, 2)


def test_id_rejects_non_trees():
    with pytest.raises(TreeError):
        id_of(TRI, Anchor.vertex(0), [0, 1, 2])
    with pytest.raises(TreeError):
        id_of(TRI, Anchor.edge(0), [1])


def test_boundary_examples():
    one_edge = subtree_from_edges(TRI, Anchor.edge(0), [0])
    assert boundary_edges(TRI, None, one_edge) == (1, 2)
    k4 = complete(4)
    root = subtree_from_edges(k4, Anchor.vertex(0), [])
    assert boundary_edges(k4, None, root) == (0, 1, 2)
    star = subtree_from_edges(k4, Anchor.vertex(0), [0, 1, 2])
    assert boundary_edges(k4, None, star) == ()


def test_children_examples():
    root = subtree_from_edges(STAR, Anchor.vertex(0), [])
    assert len(children(STAR, None, Anchor.vertex(0), root)) == 3
    a = Anchor.vertex(0)
    kids = children(TRI, None, a, subtree_from_edges(TRI, a, [0]))
    assert sorted(k.id for k in kids) == [(0, 1), (0, 2)]
    kids = children(TRI, None, a, subtree_from_edges(TRI, a, [1]))
    assert [k.id for k in kids] == [(1, 2)]
    full = subtree_from_edges(TRI, a, [0, 1])
    assert children(TRI, None, a, full) == []


def test_enumerate_examples():
    assert count_subtrees(STAR, Anchor.vertex(0), 2) == {1: 3, 2: 3}
    trees = [T.edges for T in iter_subtrees(TRI, None, Anchor.edge(0), 2)]
    assert sorted(map(sorted, trees)) == [[0], [0, 1], [0, 2]]
    assert list(iter_subtrees(complete(4), None, Anchor.vertex(0), 0)) == []


def test_visitor_abort():
    seen = []
    done = enumerate_subtrees(complete(4), None, Anchor.vertex(0), 3, lambda T: seen.append(T) or len(seen) < 5)
    assert done is False and len(seen) == 5


def test_broken_and_bcf_examples():
    order = EdgeOrder.default(TRI)
    a = Anchor.edge(0)
    assert broken_edges(TRI, order, subtree_from_edges(TRI, a, [0, 1])) == [2]
    assert broken_edges(TRI, order, subtree_from_edges(TRI, a, [0, 2])) == []
    assert broken_edges(STAR, EdgeOrder.default(STAR), subtree_from_edges(STAR, a, [0, 1, 2])) == []
    assert not is_bcf(TRI, order, subtree_from_edges(TRI, a, [0, 1]))
    assert is_bcf(TRI, order, subtree_from_edges(TRI, Anchor.edge(1), [1, 2]))
    assert is_bcf(TRI, order, subtree_from_edges(TRI, a, [0]))


def test_mask_restricts_enumeration():
    k4 = complete(4)
    mask = VertexMask(4, [3])
    trees = {T.edges for T in iter_subtrees(k4, mask, Anchor.vertex(0), 3)}
    assert trees == brute_trees(k4, mask, Anchor.vertex(0), 3)
    assert all(3 not in {x for e in t for x in k4.edges[e]} for t in trees)


def test_prune_skips_descendants():
    k4 = complete(4)
    walk = SubtreeWalk(k4, None, Anchor.vertex(0), 3)
    sizes = []
    for T in walk:
        sizes.append(T.edge_count)
        walk.prune()
    assert sizes == [1, 1, 1]


def test_enumeration_matches_brute_force():
    rng = random.Random(5)
    graphs = atlas_graphs(6)
    for G in rng.sample(graphs, 120):
        mask = VertexMask(G.n, rng.sample(range(G.n), rng.randint(0, 1)) if G.n > 2 else [])
        anchors = [Anchor.vertex(v) for v in range(G.n) if not mask.removed[v]]
        anchors += [
            Anchor.edge(e) for e, (u, v) in enumerate(G.edges) if not mask.removed[u] and not mask.removed[v]
        ]
        for anchor in anchors:
            max_edges = rng.randint(1, 4)
            seen = []
            for T in iter_subtrees(G, mask, anchor, max_edges):
                seen.append(T)
                assert len(T.vertices) == T.edge_count + 1
                assert id_of(G, anchor, T.id) == T.id
                # every prefix of an identifier is the identifier of its parent
                if T.edge_count > (1 if anchor.is_vertex else 2):
                    assert id_of(G, anchor, T.id[:-1]) == T.id[:-1]
            assert len({T.id for T in seen}) == len(seen)
            assert {T.edges for T in seen} == brute_trees(G, mask, anchor, max_edges)


def test_bcf_check_matches_cycle_definition():
    # a chord is broken iff it is the largest edge on its fundamental cycle
    rng = random.Random(11)
    k5 = complete(5)
    for _ in range(20):
        order = EdgeOrder.shuffled(k5, rng)
        for T in iter_subtrees(k5, None, Anchor.vertex(0), 4):
            B = set(broken_edges(k5, order, T))
            inside = set(T.vertices)
            for f, (u, v) in enumerate(k5.edges):
                if f in T.edges or u not in inside or v not in inside:
                    continue
                path = _tree_path(k5, T, u, v)
                assert (f in B) == all(order.rank[f] > order.rank[e] for e in path)


def _tree_path(G, T, a, b):
    adj = {}
    for e in T.id:
        u, v = G.edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    prev = {a: None}
    todo = [a]
    while todo:
        x = todo.pop()
        for y, e in adj.get(x, []):
            if y not in prev:
                prev[y] = (x, e)
                todo.append(y)
    out = []
    while b != a:
        b, e = prev[b]
        out.append(e)
    return out


def test_edge_order_validation():
    from polylog.graph import GraphError

    with pytest.raises(GraphError):
        EdgeOrder([0, 0, 1])
    order = EdgeOrder.from_pairs(TRI, [(1, 2), (0, 1), (0, 2)])
    assert order.sequence == (2, 0, 1)
    assert order.rank == (1, 2, 0)
    with pytest.raises(GraphError):
        EdgeOrder.from_pairs(TRI, [(0, 3)])
