# Random 2-HST embeddings of a BS label metric.
import numpy as np

from cellassoc.hst import build_hst, euclidean_metric, tree_distance_matrix, unit_metric, verify_embedding

# the unit metric embeds with every pair at the same tree distance
t = build_hst(unit_metric(5), seed=0)
print("unit metric, tree distances:")
print(tree_distance_matrix(t))

# Euclidean BS positions give a deeper tree; dominance always holds
rng = np.random.default_rng(3)
pts = rng.uniform(0, 100, size=(8, 2))
m = euclidean_metric(pts)
stretch = []
for seed in range(200):
    rep = verify_embedding(build_hst(m, seed), m)
    assert rep.dominance_ok
    stretch.append(rep.max_stretch)
print(f"8 random BSs, 200 trees: worst stretch {max(stretch):.1f}, median {np.median(stretch):.1f}")

t = build_hst(m, seed=0)
for node in t.nodes[:6]:
    print(f"node {node.index} level {node.level} edge {node.edge_length:g} labels {node.labels}")
