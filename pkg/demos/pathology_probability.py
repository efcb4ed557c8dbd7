"""
How often is a random profile not d-Euclidean?
==============================================

A profile containing the k rotations of one circular order over k
alternatives cannot be drawn in fewer than k-1 dimensions. We compare
a closed-form lower bound on the chance of seeing one against brute
force and simulation.
"""

from prefbounds import (
    BoundParams,
    exact_pathology_probability,
    mc_pathology_probability,
    pathology_probability_lower_bound,
)

# Three alternatives, three voters, one dimension. The bound is 1/36;
# enumerating all 216 profiles gives the true value 1/18.
params = BoundParams(A=3, d=1, I=3)
print("bound     ", pathology_probability_lower_bound(params))
print("exhaustive", float(exact_pathology_probability(3, 3, k=3)))

# Larger profiles need sampling. The seed fixes the estimate.
for A, I in [(5, 6), (6, 10)]:
    est = mc_pathology_probability(A, I, k=3, trials=20_000, seed=1)
    bound = pathology_probability_lower_bound(BoundParams(A, 1, I=I))
    print(f"A={A} I={I}  bound {bound:.4f}  simulated {est.estimate:.4f} +/- {est.std_error:.4f}")

# With more voters every rotation eventually shows up, so the bound climbs
# towards one.
for I in (3, 10, 30, 100, 200):
    print(f"I={I:>3}", round(pathology_probability_lower_bound(BoundParams(3, 1, I=I)), 6))
