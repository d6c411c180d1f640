"""
Distances between norms on R^k
==============================

Two norms are identified when one is a positive multiple of the other.
The distance between their classes is the spread of log(b/a) over the
unit sphere.
"""

import math

import numpy as np

from normspace import (
    Mixture,
    NormSphere,
    Perturbed,
    PNorm,
    Scaled,
    distance_closed_form,
    estimate_distance,
    sample_domain,
)

# a sample domain: one point per ray, here drawn on the Euclidean circle
dom = sample_domain(NormSphere(PNorm(2)), 2000, seed=0, k=2)
print("points in the domain:", len(dom))

# l1 against l_inf in the plane: the closed form is log 2
est = estimate_distance(PNorm(1), PNorm(math.inf), dom)
print("l1 vs l_inf   sampled", est.lower_bound, "refined", est.refined, "exact", math.log(2))

# rescaling one side does not move the class
print("l1 vs 3*l1    ", estimate_distance(PNorm(1), Scaled(3.0, PNorm(1)), dom).refined)

# the grid of p-norms in R^4
dom4 = sample_domain(NormSphere(PNorm(2)), 4000, seed=0, k=4)
ps = [1, 1.5, 2, 3, math.inf]
table = np.array([[estimate_distance(PNorm(p), PNorm(q), dom4).refined for q in ps] for p in ps])
np.set_printoptions(precision=4, suppress=True)
print("p-norm distances in R^4 (rows and columns p = 1, 1.5, 2, 3, inf)")
print(table)

# a perturbed pair on different axes adds up the two perturbations
a, b = Perturbed(2, 1.0, 0), Perturbed(2, 3.0, 1)
dom3 = sample_domain(NormSphere(PNorm(2)), 2000, seed=1, k=3)
print("perturbed pair", estimate_distance(a, b, dom3).refined, "closed form", distance_closed_form(a, b, 3))

# a mixture of p-norms against a larger q
mu = Mixture([1.0, 1.5], [0.5, 2.0])
print("mixture vs l3 ", estimate_distance(mu, PNorm(3), dom3).refined, "closed form", distance_closed_form(mu, PNorm(3), 3))
