"""
How many preferences fit in d dimensions at once?
=================================================

Banning every preference that completes a pathology leaves at most
``rhat`` preferences usable together.
"""

import math

import numpy as np

from prefbounds import one_dim_distinct_orders, representable_upper_bound

# On a line, A generic points realise exactly C(A,2)+1 orders, and the
# upper bound must sit above that.
rng = np.random.default_rng(0)
for A in range(3, 9):
    rb = representable_upper_bound(A, 1)
    print(f"A={A}  rhat={rb.count:>4}  on a line={one_dim_distinct_orders(rng.uniform(size=A)):>3}"
          f"  C(A,2)+1={math.comb(A, 2) + 1}")

# The fraction rhat / A! shrinks quickly as alternatives are added.
for d in (1, 2, 3):
    row = [representable_upper_bound(A, d).fraction for A in (10, 20, 40)]
    print(f"d={d}", " ".join(f"{f:.3e}" for f in row))
