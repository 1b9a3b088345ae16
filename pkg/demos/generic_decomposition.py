"""
Rank-p decompositions through the determinantal hypersurface
============================================================

An ``n x (m-1)n x m`` tensor ``X`` reduces to ``l = m-1`` square matrices
``Y_k``.  Real points of ``det(a_1 Y_1 + ... + a_l Y_l - a_m E) = 0`` with
their kernel vectors give the rank-one terms.  When the determinant never
vanishes off the origin, there are no such points and the rank exceeds ``p``.
"""

import numpy as np

from typical_rank import (
    build_x_of_y,
    classify,
    contract,
    decompose_generic,
    eval_m,
    random_gaussian,
    sample_points,
)
from typical_rank.special import quaternion_pair

# a random 3 x 6 x 3 tensor
T = random_gaussian((3, 6, 3), seed=3)
Y = contract(T)
pts = sample_points(Y, 5, seed=0)
print(f"{len(pts)} hypersurface points from 5 directions")
for pt in pts[:3]:
    print(f"  a = {np.round(pt.a, 4)}, |M(a,Y) v| = {pt.residual:.1e}")

c = classify(Y, 100, seed=0)
print(c.verdict.value, "->", c.describe())

result = decompose_generic(T)
print(result.outcome.value, f"with {result.decomposition.rank} terms, residual {result.residual:.1e}")

# left multiplication by i and j on the quaternions: det M = (a1^2 + a2^2 + a3^2)^2
Q = quaternion_pair()
print("det M at a = (1, 2, 3):", round(np.linalg.det(eval_m([1, 2, 3], Q)), 6))
c = classify(Q, 1000, seed=0)
print(c.verdict.value, "->", c.describe())
print(decompose_generic(build_x_of_y(Q)).outcome.value)
