import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellassoc.hst import (
    LabelMetric,
    build_hst,
    enumerate_subtrees,
    euclidean_metric,
    tree_distance,
    tree_distance_matrix,
    unit_metric,
    verify_embedding,
)


def test_metric_validation():
    with pytest.raises(ValueError, match="symmetric"):
        LabelMetric([[0, 1], [2, 0]])
    with pytest.raises(ValueError, match="diagonal"):
        LabelMetric([[1, 1], [1, 0]])
    with pytest.raises(ValueError, match="triangle"):
        LabelMetric([[0, 1, 5], [1, 0, 1], [5, 1, 0]])


def test_single_label_tree():
    t = build_hst(unit_metric(1), seed=3)
    assert len(t.nodes) == 1
    assert enumerate_subtrees(t) == []
    assert tree_distance(t, 0, 0) == 0.0
    rep = verify_embedding(t, unit_metric(1))
    assert rep.dominance_ok and rep.max_stretch == 1.0


def test_two_labels_split_at_root():
    t = build_hst(unit_metric(2), seed=0)
    assert t.root.children and len(t.root.children) == 2
    subtrees = enumerate_subtrees(t)
    assert len(subtrees) == 2
    (l0, s0), (l1, s1) = subtrees
    assert l0 == l1 and {s0, s1} == {(0,), (1,)}
    assert 1.0 <= tree_distance(t, 0, 1) <= 4.0
    assert tree_distance(t, 0, 1) == 2 * l0


def test_unknown_label():
    t = build_hst(unit_metric(3), seed=0)
    with pytest.raises(KeyError):
        tree_distance(t, 0, 7)


def test_unit_metric_equal_distances_over_seeds():
    for seed in range(100):
        d = tree_distance_matrix(build_hst(unit_metric(4), seed))
        off = d[~np.eye(4, dtype=bool)]
        assert np.all(off == off[0])


def _check_structure(t):
    for node in t.nodes:
        if node.children:
            lengths = {t.nodes[c].edge_length for c in node.children}
            assert len(lengths) == 1  # identical child edges
            # children's leaf sets partition the parent's
            labels = sorted(itertools.chain.from_iterable(t.nodes[c].labels for c in node.children))
            assert tuple(labels) == node.labels
            if node.parent is not None:
                assert node.edge_length == 2 * lengths.pop()
    assert t.root.labels == tuple(range(t.n_labels))


def _identity_holds(t):
    sub = enumerate_subtrees(t)
    for a, b in itertools.combinations(range(t.n_labels), 2):
        total = sum(l * abs((a in L) - (b in L)) for l, L in sub)
        assert total == tree_distance(t, a, b)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(2, 12), scale=st.floats(0.01, 1000.0))
def test_random_euclidean_trees(seed, n, scale):
    pts = np.random.default_rng(seed).uniform(0, scale, size=(n, 2))
    m = euclidean_metric(pts)
    t = build_hst(m, seed)
    _check_structure(t)
    _identity_holds(t)
    assert verify_embedding(t, m).dominance_ok


def test_euclidean_eight_points_dominance_200_seeds():
    m = euclidean_metric(np.random.default_rng(5).uniform(0, 100, size=(8, 2)))
    for seed in range(200):
        assert verify_embedding(build_hst(m, seed), m).dominance_ok


def test_unit_metric_stretch_bound():
    for n in (2, 3, 7):
        for seed in range(20):
            rep = verify_embedding(build_hst(unit_metric(n), seed), unit_metric(n))
            assert rep.dominance_ok and rep.max_stretch <= 4


def test_deterministic_for_seed():
    m = euclidean_metric(np.random.default_rng(1).uniform(0, 10, size=(6, 2)))
    a, b = build_hst(m, 42), build_hst(m, 42)
    assert a.nodes == b.nodes


def test_zero_distance_labels_are_separated():
    m = LabelMetric([[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    t = build_hst(m, 0)
    assert len(enumerate_subtrees(t)) >= 3
    assert verify_embedding(t, m).dominance_ok
