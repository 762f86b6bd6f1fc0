"""Monte Carlo view of the escape dichotomy for the critical orbit.

Below the bifurcation radius the critical orbit never leaves the escape
disk; well above it nearly every orbit escapes.  Near the threshold escapes
become rare events, so finite horizons see very few of them.
"""
from qbif import DiskLaw, StreamSeed, estimate_T

cases = [((0, 0.2), 10_000), ((0, 0.5), 10_000), ((0, 0.5), 1_000),
         ((-1, 0.02), 10_000), ((-1, 0.05), 10_000), ((-1, 0.08), 10_000)]
for (center, r), horizon in cases:
    est = estimate_T(DiskLaw(center, r), 0, 2000, horizon, StreamSeed(7))
    lo, hi = est.wilson_interval
    print(f"B({center}, {r}) horizon {horizon:>6}: T = {est.point_estimate:.4f}  "
          f"99% Wilson [{lo:.4f}, {hi:.4f}]")
