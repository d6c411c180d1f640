"""
Finite metrics inside the space of metrics
==========================================

A finite metric is scaled to diameter log 2, written in Frechet
coordinates, padded with zeros and read as log pairwise distances of a
metric on n points. The distances it produces lie between one and two
times the originals.
"""

import math

import numpy as np

from normspace import embed_into_Sn, frechet_embed, isometry_counterexample, validate_metric
from normspace.embeddings import sup_distances
from normspace.generators import random_metric

tri = validate_metric(np.ones((3, 3)) - np.eye(3))

# Frechet coordinates reproduce distances in the sup norm
coords = frechet_embed(tri)
print("coordinates\n", coords)
print("sup distances\n", sup_distances(coords))

# the pipeline on a random 5-point metric, landing in metrics on 4 points
x = random_metric(5, np.random.Generator(np.random.MT19937(4)))
rep = embed_into_Sn(x, 4)
print("membership", rep.membership_ok, "ratios", round(rep.min_ratio, 4), "to", round(rep.max_ratio, 4))
for row in rep.pair_table[:4]:
    print("  pair", row["pair"], "source", round(row["source"], 4), "image", round(row["image"], 4))

# an equilateral triangle shows that the ratio 2 is reached
ce = isometry_counterexample()
print("difference of two images", np.round(ce["difference"], 4), "ratio", ce["ratio"])

# too large a diameter breaks membership
big = validate_metric(2.0 * (np.ones((3, 3)) - np.eye(3)))
print("side 2 > log 2 =", round(math.log(2), 4), "membership", embed_into_Sn(big, 3, rescale=False).membership_ok)
