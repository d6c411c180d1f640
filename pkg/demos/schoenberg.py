"""
Which finite metrics are Euclidean?
===================================

A metric embeds in Euclidean space exactly when the matrix
d(b, x_j)^2 + d(b, x_k)^2 - d(x_j, x_k)^2 is positive semidefinite; its
rank is the smallest dimension that works.
"""

import numpy as np

from normspace import euclidean_embed, validate_metric
from normspace.generators import random_euclidean_metric

cases = {
    "equilateral": np.ones((3, 3)) - np.eye(3),
    "line": [[0, 1, 2], [1, 0, 1], [2, 1, 0]],
    "star": [[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 2], [1, 2, 2, 0]],
}

for name, table in cases.items():
    rep = euclidean_embed(validate_metric(table))
    print(f"{name:12s} embeddable={rep.embeddable}  rank={rep.rank}  eigenvalues={np.round(rep.eigenvalues, 6)}")

# the star fails: the all-ones direction has eigenvalue -2
star = euclidean_embed(validate_metric(cases["star"]))
print("witness", np.round(star.witness, 4))

# points drawn in the plane come back as planar coordinates
r = random_euclidean_metric(6, 2, np.random.Generator(np.random.MT19937(1)))
rep = euclidean_embed(r, base=2)
print("recovered rank", rep.rank, "residual", rep.residual)
