import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coword.errors import CowordWarning
from coword.semgraph import (
    SemanticGraph,
    Node,
    build_graph,
    components,
    default_threshold,
    prune_isolated,
    resolve_threshold,
    subgraph,
)
from oracles import bfs_components


def sim3(ab, ac, bc):
    return np.array([[1, ab, ac], [ab, 1, bc], [ac, bc, 1]], dtype=float)


def test_default_thresholds():
    assert default_threshold("restricted") == 0.5
    assert default_threshold("elaborate") == 0.1
    assert resolve_threshold("restricted", 0.3) == 0.3
    with pytest.raises(ValueError):
        default_threshold("loose")


def test_build_graph_examples():
    g = build_graph(sim3(0.6, 0.3, 0.05), ["a", "b", "c"], 0.1)
    assert [(i, j) for i, j, _ in g.edges] == [(0, 1), (0, 2)]
    assert g.n_nodes == 3
    assert build_graph(sim3(0.6, 0.3, 0.05), "abc", 1.0).n_edges == 0
    assert build_graph(sim3(0.6, 0.0, 0.05), "abc", 0.0).n_edges == 2


def test_build_graph_threshold_is_inclusive():
    g = build_graph(sim3(0.5, 0.4999999, 0.2), "abc", 0.5)
    assert [(i, j, w) for i, j, w in g.edges] == [(0, 1, 0.5)]


def test_build_graph_rejects_bad_cosine_threshold():
    with pytest.raises(ValueError):
        build_graph(sim3(0.6, 0.3, 0.05), "abc", 1.5)


def test_prune_examples():
    g = build_graph(sim3(0.6, 0.0, 0.05), "abc", 0.1)
    pruned = prune_isolated(g)
    assert [n.surface for n in pruned.nodes] == ["a", "b"]
    assert pruned.pruned == ("c",)
    assert pruned.edges == g.edges
    full = build_graph(sim3(0.6, 0.3, 0.2), "abc", 0.1)
    assert prune_isolated(full) == full
    with pytest.warns(CowordWarning):
        empty = prune_isolated(build_graph(sim3(0.2, 0.2, 0.2), "abc", 0.9))
    assert empty.n_nodes == 0 and len(empty.pruned) == 3


def test_components_examples():
    two = SemanticGraph(tuple(Node(k, s) for k, s in enumerate("abcd")), ((0, 3, 0.5), (1, 2, 0.5)), 0.1)
    assert components(two) == [[0, 3], [1, 2]]
    tri = build_graph(sim3(0.6, 0.6, 0.6), "abc", 0.5)
    assert components(tri) == [[0, 1, 2]]
    assert components(subgraph(tri, [0, 1])) == [[0, 1]]


def test_density():
    tri = build_graph(sim3(0.6, 0.6, 0.6), "abc", 0.5)
    assert tri.density() == 1.0
    assert build_graph(sim3(0.6, 0.0, 0.0), "abc", 0.5).density() == pytest.approx(1 / 3)


def random_similarity(seed, n):
    rng = np.random.default_rng(seed)
    s = rng.random((n, n)) * (rng.random((n, n)) < 0.6)
    s = np.triu(s, 1)
    s = s + s.T
    np.fill_diagonal(s, 1.0)
    return s


@given(st.integers(0, 10_000), st.integers(1, 15), st.floats(0, 1), st.floats(0, 1))
def test_threshold_monotone(seed, n, t1, t2):
    t1, t2 = sorted((t1, t2))
    s = random_similarity(seed, n)
    labels = [f"w{k}" for k in range(n)]
    low = set(build_graph(s, labels, t1).edges)
    high = set(build_graph(s, labels, t2).edges)
    assert high <= low


@given(st.integers(0, 10_000), st.integers(1, 15), st.floats(0, 1))
def test_pruning_invariants(seed, n, t):
    s = random_similarity(seed, n)
    g = build_graph(s, [f"w{k}" for k in range(n)], t)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CowordWarning)
        p = prune_isolated(g)
        again = prune_isolated(p)
    deg = g.degrees()
    assert p.n_nodes + len(p.pruned) == n
    by_surface = {x.surface: x.word_id for x in g.nodes}
    assert all(deg[by_surface[w]] == 0 for w in p.pruned)
    assert all(deg[x.word_id] >= 1 for x in p.nodes)
    assert again.nodes == p.nodes and again.edges == p.edges
    comps = components(p)
    oracle = bfs_components(p.node_ids(), [(i, j) for i, j, _ in p.edges])
    assert sorted(map(sorted, oracle)) == sorted(comps)
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)



def test_graph_rejects_dangling_edge():
    with pytest.raises(ValueError):
        SemanticGraph((Node(0, "a"),), ((0, 1, 0.5),), 0.1)
    with pytest.raises(ValueError):
        SemanticGraph((Node(0, "a"), Node(1, "b")), ((1, 0, 0.5),), 0.1)
