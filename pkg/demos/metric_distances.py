"""
Log-distortion between finite metrics
=====================================

Metrics on the same finite set are compared up to rescaling: the distance
is the spread of log(d2/d1) over all pairs of points.
"""

import math

from normspace import (
    apex_extend,
    are_proportional,
    brute_force_isometry,
    discrete,
    gh_pair,
    line_witness,
    log_distortion,
    rho_distance_closed_form,
    rho_family,
)

# the discrete metric against points of a line with one far outlier
for m in (1, 5, 20):
    d = log_distortion(discrete(3), line_witness(3, m))
    print(f"m = {m:2d}: distance {d:.6f}, log(3 + m) = {math.log(3 + m):.6f}")

# one edge changed: the family where a single pair has length a
r1, r2 = rho_family(4, 0, 0.5), rho_family(4, 3, 1.8)
print("rho pair:", log_distortion(r1, r2), "closed form", rho_distance_closed_form(0, 0.5, 3, 1.8))

# adding an apex point at the diameter keeps the distance
print("before apex", log_distortion(r1, r2), "after", log_distortion(apex_extend(r1), apex_extend(r2)))

# isometric spaces can still be far apart as labelled metrics
g1, g2 = gh_pair(4, (0, 1), (2, 3))
print("isometry", brute_force_isometry(g1, g2))
print("distance", log_distortion(g1, g2), "= log 4:", math.isclose(log_distortion(g1, g2), math.log(4)))
print("proportional:", are_proportional(g1, g2))
