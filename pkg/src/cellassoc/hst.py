"""Randomized FRT embedding of a label metric into a 2-HST.

The tree is built top-down by ball carving. A node at level ``j`` holds a
cluster of labels; it is split by visiting centers in a random permutation
and giving each unclaimed label to the first center within radius
``beta_r * 2**(j - 2)``. Edges from a level-``j`` node to its children have
length ``2**j``, so the root's child edges equal the top scale ``Delta`` and
every level halves. Clusters at level ``j`` have diameter below ``2**(j+1)``,
which is what makes tree distances dominate the metric.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class LabelMetric:
    dist: np.ndarray

    def __post_init__(self):
        d = np.array(self.dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("metric: distance matrix must be square")
        if d.shape[0] < 1:
            raise ValueError("metric: need at least one label")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise ValueError("metric: distances must be finite and nonnegative")
        if np.any(np.diag(d) != 0):
            raise ValueError("metric: nonzero diagonal")
        if not np.array_equal(d, d.T):
            raise ValueError("metric: not symmetric")
        # d[a, c] <= d[a, b] + d[b, c] for all triples
        slack = d[:, None, :] - (d[:, :, None] + d[None, :, :])
        if np.any(slack > 1e-9 * max(1.0, float(d.max()))):
            raise ValueError("metric: triangle inequality violated")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def diameter(self) -> float:
        return float(self.dist.max())


def unit_metric(n: int) -> LabelMetric:
    """Complete graph with unit edge lengths on ``n`` labels."""
    return LabelMetric(1.0 - np.eye(n))


def euclidean_metric(points) -> LabelMetric:
    pts = np.asarray(points, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    return LabelMetric(np.sqrt(np.sum(diff**2, axis=-1)))


@dataclass(frozen=True)
class HSTNode:
    index: int
    parent: int | None
    level: int
    edge_length: float  # length of the edge to the parent; 0 for the root
    labels: tuple
    children: tuple


class HSTree:
    """Rooted 2-HST whose leaves are in bijection with the labels.

    Nodes are stored in pre-order; ``nodes[0]`` is the root.
    """

    def __init__(self, nodes: list[HSTNode], n_labels: int, top_scale: float, seed=None):
        self.nodes = tuple(nodes)
        self.n_labels = n_labels
        self.top_scale = top_scale
        self.seed = seed
        self._leaf = {}
        for node in self.nodes:
            if not node.children:
                (label,) = node.labels
                self._leaf[label] = node.index
        # root-to-node cumulative length, for distance queries
        depth_len = np.zeros(len(self.nodes))
        for node in self.nodes[1:]:
            depth_len[node.index] = depth_len[node.parent] + node.edge_length
        self._depth_len = depth_len

    @property
    def root(self) -> HSTNode:
        return self.nodes[0]

    def leaf(self, label: int) -> HSTNode:
        try:
            return self.nodes[self._leaf[label]]
        except KeyError:
            raise KeyError(f"unknown label {label!r}") from None

    def ancestors(self, index: int) -> list[int]:
        path = [index]
        while self.nodes[path[-1]].parent is not None:
            path.append(self.nodes[path[-1]].parent)
        return path

    def __repr__(self):
        return f"HSTree(n_labels={self.n_labels}, nodes={len(self.nodes)}, top_scale={self.top_scale})"


def build_hst(m: LabelMetric, seed=None) -> HSTree:
    rng = np.random.default_rng(seed)
    n = m.n
    if n == 1:
        return HSTree([HSTNode(0, None, 0, 0.0, (0,), ())], 1, 0.0, seed)

    perm = rng.permutation(n)
    beta_r = rng.uniform(1.0, 2.0)
    diam = m.diameter
    top = math.ceil(math.log2(diam)) if diam > 0 else 0
    dist = m.dist

    nodes: list[dict] = []

    def grow(labels, level, parent, edge):
        idx = len(nodes)
        nodes.append(dict(index=idx, parent=parent, level=level, edge_length=edge,
                          labels=tuple(sorted(labels)), children=[]))
        if len(labels) == 1:
            return idx
        sub = dist[np.ix_(labels, labels)]
        if sub.max() == 0:
            parts = [[v] for v in labels]
        else:
            radius = beta_r * 2.0 ** (level - 2)
            remaining = list(labels)
            parts = []
            for c in perm:
                if not remaining:
                    break
                ball = [v for v in remaining if dist[v, c] <= radius]
                if ball:
                    parts.append(ball)
                    remaining = [v for v in remaining if dist[v, c] > radius]
        child_edge = 2.0**level
        for part in parts:
            child = grow(part, level - 1, idx, child_edge)
            nodes[idx]["children"].append(child)
        return idx

    grow(list(range(n)), top, None, 0.0)
    built = [HSTNode(**{**d, "children": tuple(d["children"])}) for d in nodes]
    return HSTree(built, n, 2.0**top, seed)


def tree_distance(t: HSTree, a: int, b: int) -> float:
    """Length of the tree path between the leaves of labels ``a`` and ``b``."""
    la, lb = t.leaf(a).index, t.leaf(b).index
    if la == lb:
        return 0.0
    on_path_a = set(t.ancestors(la))
    lca = next(i for i in t.ancestors(lb) if i in on_path_a)
    dl = t._depth_len
    return float(dl[la] + dl[lb] - 2.0 * dl[lca])


def tree_distance_matrix(t: HSTree) -> np.ndarray:
    n = t.n_labels
    out = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            out[a, b] = out[b, a] = tree_distance(t, a, b)
    return out


def enumerate_subtrees(t: HSTree) -> list[tuple[float, tuple]]:
    """``(l_T, L(T))`` for every non-root node, in pre-order."""
    return [(node.edge_length, node.labels) for node in t.nodes[1:]]


@dataclass(frozen=True)
class EmbeddingReport:
    dominance_ok: bool
    max_stretch: float


def verify_embedding(t: HSTree, m: LabelMetric) -> EmbeddingReport:
    if t.n_labels != m.n:
        raise ValueError("tree and metric disagree on the number of labels")
    dt = tree_distance_matrix(t)
    dominance_ok = bool(np.all(dt >= m.dist))
    positive = m.dist > 0
    max_stretch = float(np.max(dt[positive] / m.dist[positive])) if positive.any() else 1.0
    return EmbeddingReport(dominance_ok, max_stretch)
