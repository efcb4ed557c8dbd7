"""
Checking the bounds against oracles
===================================

Every bound is compared with an independent oracle: exhaustive enumeration
where it is affordable, seeded Monte Carlo otherwise.
"""

from prefbounds import BoundParams, Budget, verify_all

grid = [BoundParams(A, d, I=I) for A in range(3, 6) for I in range(2, 6) for d in (1, 2)]
report = verify_all(grid, Budget(trials=5_000, profile_cap=10**6, seed=0))

for row in report.rows[:8]:
    print(f"{row.check:<10} A={row.A} I={row.I} d={row.d}  {row.status:<7} slack={row.slack}")
print(report.summary())
