"""
Bounded functions modulo constants
==================================

Two real functions on the same set are close when f - g is nearly
constant. The diameter of f - g measures that, and the Kuratowski section
picks the representative that vanishes at an anchor point.
"""

import numpy as np

from normspace import (
    Z3_L1,
    BoundedFunction,
    diameter_seminorm,
    kuratowski_section,
    pair_pseudometric,
    real_function,
    sup_distance,
)

rng = np.random.Generator(np.random.MT19937(3))

f = real_function(rng.uniform(-1, 1, 6))
g = real_function(rng.uniform(-1, 1, 6))

# the pair pseudometric agrees with the diameter of the difference
print("d(f, g)       ", pair_pseudometric(f, g))
print("diam(f - g)   ", diameter_seminorm(f - g))

# shifting by a constant changes nothing
print("d(f, f + 5)   ", pair_pseudometric(f, f.shift(5.0)))

# the diameter sits between the sup distance and twice it
print("sup distance  ", sup_distance(f, g))

# sections at a common anchor are never further apart than d(f, g)
sf, sg = kuratowski_section(f, 0), kuratowski_section(g, 0)
print("sections      ", sup_distance(sf.base, sg.base))

# the same pseudometric over integer vectors with the l1 distance
labels = tuple(range(4))
u = BoundedFunction(labels, [Z3_L1.sample(rng) for _ in labels], Z3_L1)
v = BoundedFunction(labels, [Z3_L1.sample(rng) for _ in labels], Z3_L1)
print("Z^3 carrier   ", pair_pseudometric(u, v))
