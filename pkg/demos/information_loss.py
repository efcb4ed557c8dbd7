"""
Expected distance to the nearest representable preference
==========================================================

When only ``rhat`` preferences can be represented, a random preference
is typically some adjacent swaps away from all of them.
"""

from prefbounds import BoundParams, info_loss_lower_bound

# Three alternatives in one dimension: a third of a swap on average.
res = info_loss_lower_bound(BoundParams(3, 1))
print("A=3 d=1", res.expectation_lb, "scaled", res.scaled_lb)

# Scaled by the largest possible distance A(A-1)/2, the loss stays visible
# for moderate A. The ball can be counted by the power law or exactly.
for mode in ("paper", "exact"):
    best = max(
        (info_loss_lower_bound(BoundParams(A, d, ball_mode=mode)).scaled_lb, A, d)
        for A in range(5, 21)
        for d in range(1, A - 1)
    )
    print(f"{mode:>5}: largest scaled bound {best[0]:.4f} at A={best[1]}, d={best[2]}")

# With enough dimensions every preference fits and nothing is lost.
print("A=6 d=5", info_loss_lower_bound(BoundParams(6, 5)).expectation_lb)
