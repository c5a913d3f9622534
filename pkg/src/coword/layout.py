"""Kamada-Kawai spring embedding of a semantic graph.

Every pair of nodes in a component is joined by a spring whose rest length
is proportional to their graph distance, ``l_ij = L * d_ij``, and whose
stiffness is ``k_ij = K / d_ij**2``. The layout minimizes

    E = sum_{i<j} k_ij * (|p_i - p_j| - l_ij)**2 / 2

by moving one node at a time: the node with the steepest energy gradient is
relaxed by damped gradient descent (the step is halved until the energy
drops) until its own gradient falls below the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from coword._parallel import pmap
from coword.errors import LayoutError
from coword.semgraph import SemanticGraph, components

EDGE_LENGTH_MODES = ("unit", "inverse_weight")
_MIN_DIST = 1e-12


@dataclass(frozen=True)
class LayoutConfig:
    """Layout knobs.

    ``tolerance`` of None means ``1e-5 * L`` for each component, and
    ``max_outer_iterations`` of None means ``100 * |V|``.
    """

    edge_length_mode: str = "unit"
    canvas_side: float = 1.0
    tolerance: float | None = None
    max_outer_iterations: int | None = None
    seed: int = 0
    max_inner_iterations: int = 1000

    def __post_init__(self):
        if self.edge_length_mode not in EDGE_LENGTH_MODES:
            raise ValueError(f"edge_length_mode must be one of {EDGE_LENGTH_MODES}")
        if self.canvas_side <= 0:
            raise ValueError("canvas_side must be positive")
        if self.tolerance is not None and self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_outer_iterations is not None and self.max_outer_iterations < 1:
            raise ValueError("max_outer_iterations must be >= 1")


@dataclass(frozen=True)
class ComponentLayout:
    word_ids: tuple
    raw_positions: np.ndarray  # before packing and normalization
    edge_unit: float  # L
    energy: float
    iterations: int
    converged: bool
    energy_history: tuple = field(repr=False, default=())


@dataclass(frozen=True)
class Embedding:
    positions: dict  # word_id -> (x, y) in [0, 1]^2
    boxes: tuple  # per component (xmin, ymin, xmax, ymax), normalized
    components: tuple  # ComponentLayout per component
    energy: float
    iterations: int
    converged: bool

    def coords(self, word_ids):
        return np.array([self.positions[w] for w in word_ids], dtype=np.float64)


def graph_distances(g: SemanticGraph, mode: str = "unit"):
    """Shortest-path distances inside each connected component.

    Returns ``[(word_ids, D), ...]`` in component order. ``unit`` counts hops;
    ``inverse_weight`` gives each edge length ``1 - weight + 0.01``.
    """
    if mode not in EDGE_LENGTH_MODES:
        raise ValueError(f"mode must be one of {EDGE_LENGTH_MODES}, got {mode!r}")
    out = []
    for ids in components(g):
        pos = {w: k for k, w in enumerate(ids)}
        inside = [(pos[i], pos[j], w) for i, j, w in g.edges if i in pos]
        n = len(ids)
        if inside:
            a, b, w = map(np.asarray, zip(*inside))
            length = np.ones(len(w)) if mode == "unit" else (1.0 - w) + 0.01
            adj = coo_matrix((length, (a, b)), shape=(n, n)).tocsr()
            dist = shortest_path(adj, method="D", directed=False, unweighted=(mode == "unit"))
        else:
            dist = np.zeros((n, n))
        out.append((tuple(ids), dist))
    return out


def spring_parameters(distances, edge_unit, stiffness=1.0):
    """Rest lengths ``L*d`` and stiffnesses ``K/d**2`` (zero on the diagonal)."""
    d = np.asarray(distances, dtype=np.float64)
    lengths = edge_unit * d
    with np.errstate(divide="ignore"):
        strengths = np.where(d > 0, stiffness / np.where(d > 0, d, 1.0) ** 2, 0.0)
    return lengths, strengths


def _pairwise(p):
    diff = p[:, None, :] - p[None, :, :]
    return diff, np.sqrt((diff**2).sum(axis=-1))


def kk_energy(positions, lengths, strengths) -> float:
    """Total spring energy ``sum_{i<j} k_ij (|p_i - p_j| - l_ij)**2 / 2``."""
    p = np.asarray(positions, dtype=np.float64)
    _, dist = _pairwise(p)
    terms = np.asarray(strengths) * (dist - np.asarray(lengths)) ** 2
    return float(np.triu(terms, k=1).sum() / 2)


def _gradients(p, lengths, strengths):
    diff, dist = _pairwise(p)
    coef = strengths * (1.0 - lengths / np.maximum(dist, _MIN_DIST))
    np.fill_diagonal(coef, 0.0)
    return (coef[:, :, None] * diff).sum(axis=1)


def _node_state(pm, p, lengths_m, strengths_m):
    """Energy and gradient of the springs attached to one node at ``pm``.

    The node's own entry drops out because its stiffness is zero.
    """
    diff = pm - p
    dist = np.sqrt(diff[:, 0] ** 2 + diff[:, 1] ** 2)
    energy = (strengths_m * (dist - lengths_m) ** 2).sum() / 2
    coef = strengths_m * (1.0 - lengths_m / np.maximum(dist, _MIN_DIST))
    return energy, coef @ diff


def _relax_node(m, p, lengths, strengths, tol, max_inner):
    """Damped descent on one node's coordinates; the rest stay fixed.

    The step grows after every accepted move and is halved until the energy
    drops, so flat valleys are crossed quickly without ever going uphill.
    """
    lengths_m, strengths_m = lengths[m], strengths[m]
    base_step = 1.0 / strengths_m.sum()
    step = base_step
    pm = p[m].copy()
    current, grad = _node_state(pm, p, lengths_m, strengths_m)
    for _ in range(max_inner):
        if math.hypot(grad[0], grad[1]) < tol:
            break
        while step > base_step * 1e-12:
            trial = pm - step * grad
            trial_energy, trial_grad = _node_state(trial, p, lengths_m, strengths_m)
            if trial_energy < current:
                pm, current, grad = trial, trial_energy, trial_grad
                step = min(step * 2, base_step * 1e6)
                break
            step /= 2
        else:
            break  # no descent possible at machine precision
    p[m] = pm


def layout_component(distances, edge_unit, *, stiffness=1.0, tolerance=None, max_outer=None,
                     max_inner=1000, init=None):
    """Minimize spring energy for one connected component.

    ``init`` gives starting positions; by default nodes sit on a circle of
    radius ``edge_unit * max(d) / 2`` in index order. Returns
    ``(positions, energy, iterations, converged, history)``.
    """
    d = np.asarray(distances, dtype=np.float64)
    n = d.shape[0]
    lengths, strengths = spring_parameters(d, edge_unit, stiffness)
    if init is None:
        angle = 2 * np.pi * np.arange(n) / n
        radius = edge_unit * d.max(initial=0) / 2
        init = radius * np.column_stack([np.cos(angle), np.sin(angle)])
    p = np.array(init, dtype=np.float64)
    if n < 2:
        return p, 0.0, 0, True, (0.0,)

    tol = 1e-5 * edge_unit if tolerance is None else tolerance
    max_outer = 100 * n if max_outer is None else max_outer
    energy = kk_energy(p, lengths, strengths)
    history = [energy]
    converged = False
    iterations = 0
    while True:
        grads = _gradients(p, lengths, strengths)
        mags = np.hypot(grads[:, 0], grads[:, 1])
        m = int(np.argmax(mags))
        if mags[m] < tol:
            converged = True
            break
        if iterations >= max_outer:
            break
        _relax_node(m, p, lengths, strengths, tol, max_inner)
        iterations += 1
        energy = kk_energy(p, lengths, strengths)
        history.append(energy)
    return p, energy, iterations, converged, tuple(history)


def kk_layout(g: SemanticGraph, config: LayoutConfig | None = None, workers: int = 1) -> Embedding:
    """Lay out each component, pack them on a grid and normalize to the unit square.

    Each component gets a square canvas whose area is proportional to its node
    count; its longest graph distance spans that canvas. Nodes start on a
    circle in word-id order with a seeded radius jitter. Components are packed
    row-major by descending size and the whole picture is scaled uniformly
    into ``[0, 1]^2``.
    """
    config = config or LayoutConfig()
    if not g.nodes:
        raise LayoutError("cannot lay out an empty graph")
    parts = graph_distances(g, config.edge_length_mode)
    total = sum(len(ids) for ids, _ in parts)
    rng = np.random.default_rng(config.seed)
    jitter = rng.uniform(0.8, 1.0, size=len(parts))

    jobs = []
    for (ids, dist), jit in zip(parts, jitter):
        allot = config.canvas_side * math.sqrt(len(ids) / total)
        maxd = dist.max(initial=0)
        edge_unit = allot / maxd if maxd > 0 else allot
        angle = 2 * np.pi * np.arange(len(ids)) / len(ids)
        radius = allot / 2 * jit
        init = radius * np.column_stack([np.cos(angle), np.sin(angle)])
        jobs.append((ids, dist, edge_unit, init))

    def run(job):
        ids, dist, edge_unit, init = job
        tol = config.tolerance if config.tolerance is not None else 1e-5 * edge_unit
        pos, energy, its, conv, hist = layout_component(
            dist, edge_unit, tolerance=tol, max_outer=config.max_outer_iterations,
            max_inner=config.max_inner_iterations, init=init,
        )
        return ComponentLayout(ids, pos, edge_unit, energy, its, conv, hist)

    laid = pmap(run, jobs, workers)
    placed = _pack([c.raw_positions for c in laid], margin=0.05 * config.canvas_side)

    everything = np.vstack(placed)
    lo = everything.min(axis=0)
    span = (everything.max(axis=0) - lo).max()
    scale = 1.0 / span if span > 0 else 1.0
    offset = np.where(span > 0, 0.0, 0.5)

    positions, boxes = {}, []
    for comp, pts in zip(laid, placed):
        norm = np.clip((pts - lo) * scale + offset, 0.0, 1.0)
        for wid, (x, y) in zip(comp.word_ids, norm):
            positions[wid] = (float(x), float(y))
        boxes.append(tuple(float(v) for v in (*norm.min(axis=0), *norm.max(axis=0))))

    return Embedding(
        positions=dict(sorted(positions.items())),
        boxes=tuple(boxes),
        components=tuple(laid),
        energy=float(sum(c.energy for c in laid)),
        iterations=int(sum(c.iterations for c in laid)),
        converged=all(c.converged for c in laid),
    )


def _pack(blocks, margin):
    """Translate point sets into a row-major grid, largest first."""
    order = sorted(range(len(blocks)), key=lambda k: -len(blocks[k]))
    ncols = math.ceil(math.sqrt(len(blocks)))
    placed = [None] * len(blocks)
    y = 0.0
    for row_start in range(0, len(order), ncols):
        x, row_height = 0.0, 0.0
        for k in order[row_start:row_start + ncols]:
            pts = blocks[k]
            lo, hi = pts.min(axis=0), pts.max(axis=0)
            placed[k] = pts - lo + np.array([x, y])
            x += (hi - lo)[0] + margin
            row_height = max(row_height, (hi - lo)[1])
        y += row_height + margin
    return placed
