"""Thresholded word networks built from a similarity matrix."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from coword.errors import CowordWarning

THRESHOLDS = {"restricted": 0.5, "elaborate": 0.1}


@dataclass(frozen=True)
class Node:
    word_id: int
    surface: str
    total_freq: int = 0
    unit_freq: int = 0


@dataclass(frozen=True)
class SemanticGraph:
    """Undirected word graph.

    ``nodes`` are ordered by word id; ``edges`` holds ``(i, j, weight)``
    with word ids ``i < j``, sorted. ``pruned`` lists the surfaces removed
    as isolated nodes.
    """

    nodes: tuple
    edges: tuple
    threshold: float
    measure: str = "cosine"
    pruned: tuple = field(default=())

    def __post_init__(self):
        ids = {n.word_id for n in self.nodes}
        for i, j, _ in self.edges:
            if i not in ids or j not in ids or i >= j:
                raise ValueError(f"edge ({i}, {j}) must join two distinct nodes with i < j")

    @property
    def n_nodes(self):
        return len(self.nodes)

    @property
    def n_edges(self):
        return len(self.edges)

    def node_ids(self):
        return [n.word_id for n in self.nodes]

    def degrees(self):
        deg = {n.word_id: 0 for n in self.nodes}
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def density(self):
        n = len(self.nodes)
        return 2 * len(self.edges) / (n * (n - 1)) if n > 1 else 0.0


def default_threshold(mode: str) -> float:
    """0.5 for a single tightly written document, 0.1 for loose document sets."""
    try:
        return THRESHOLDS[mode]
    except KeyError:
        raise ValueError(f"mode must be 'restricted' or 'elaborate', got {mode!r}") from None


def resolve_threshold(mode: str, override: float | None = None) -> float:
    return default_threshold(mode) if override is None else float(override)


def build_graph(sim, words, threshold: float) -> SemanticGraph:
    """Link word pairs whose similarity is at least ``threshold``.

    ``words`` are the word entries aligned with the matrix rows (anything
    with ``word_id``/``surface``, or plain strings). Pairs with similarity
    exactly zero are never linked. Every word becomes a node; isolated ones
    are removed separately by :func:`prune_isolated`.
    """
    values = np.asarray(getattr(sim, "values", sim), dtype=np.float64)
    measure = getattr(sim, "measure", "cosine")
    if measure == "cosine" and not 0.0 <= threshold <= 1.0:
        raise ValueError(f"cosine threshold must lie in [0, 1], got {threshold}")
    nodes = tuple(_as_node(w, k) for k, w in enumerate(words))
    if values.shape != (len(nodes), len(nodes)):
        raise ValueError(f"similarity matrix {values.shape} does not match {len(nodes)} words")

    edges = []
    ii, jj = np.triu_indices(len(nodes), k=1)
    w = values[ii, jj]
    keep = (w >= threshold) & (w != 0)
    for a, b, weight in zip(ii[keep], jj[keep], w[keep]):
        i, j = nodes[a].word_id, nodes[b].word_id
        edges.append((min(i, j), max(i, j), float(weight)))
    edges.sort()
    order = sorted(nodes, key=lambda n: n.word_id)
    return SemanticGraph(tuple(order), tuple(edges), float(threshold), measure)


def _as_node(w, k):
    if isinstance(w, str):
        return Node(k, w)
    return Node(w.word_id, w.surface, getattr(w, "total_freq", 0), getattr(w, "unit_freq", 0))


def prune_isolated(g: SemanticGraph) -> SemanticGraph:
    """Drop exactly the degree-0 nodes; edges are untouched."""
    deg = g.degrees()
    kept = tuple(n for n in g.nodes if deg[n.word_id] > 0)
    removed = tuple(n.surface for n in g.nodes if deg[n.word_id] == 0)
    if not kept and g.nodes:
        warnings.warn(
            f"every node is isolated at threshold {g.threshold}; the graph is empty",
            CowordWarning,
            stacklevel=2,
        )
    return replace(g, nodes=kept, pruned=g.pruned + removed)


def components(g: SemanticGraph) -> list[list[int]]:
    """Connected components as lists of word ids, ordered by their smallest id."""
    ids = g.node_ids()
    if not ids:
        return []
    pos = {wid: k for k, wid in enumerate(ids)}
    rows = [pos[i] for i, _, _ in g.edges]
    cols = [pos[j] for _, j, _ in g.edges]
    adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(ids), len(ids)))
    _, labels = connected_components(adj, directed=False)
    groups = {}
    for wid, label in zip(ids, labels):
        groups.setdefault(label, []).append(wid)
    return sorted((sorted(members) for members in groups.values()), key=lambda c: c[0])


def subgraph(g: SemanticGraph, word_ids) -> SemanticGraph:
    keep = set(word_ids)
    return replace(
        g,
        nodes=tuple(n for n in g.nodes if n.word_id in keep),
        edges=tuple(e for e in g.edges if e[0] in keep and e[1] in keep),
        pruned=(),
    )
