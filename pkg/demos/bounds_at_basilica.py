"""Bracket the bifurcation radius at c = -1 from both sides.

The lower bound comes from a chain of invariant disks around the attracting
2-cycle {0, -1}; the upper bound from a parabolic parameter found as a root
of a discriminant.
"""
import mpmath

from qbif.bif_bounds import (combine_bounds, discriminant_upper_bound,
                             lower_bound_invariant_disks, maximize_rho)

d, r = maximize_rho()
print(f"rho(delta) peaks at delta* = {mpmath.nstr(d, 8)}, r_max = {mpmath.nstr(r, 8)}")

lower, cert = lower_bound_invariant_disks(-1, 2, 1e-6)
print(f"binary search lower bound: {lower:.7f}")
print(f"  disk radii {[round(x, 6) for x in cert.radii]}, slack {[f'{s:.1e}' for s in cert.slack]}")

upper = discriminant_upper_bound(-1, 4, 6, (1, 2, 5, 4))
print(f"parabolic root rho0 = {mpmath.nstr(upper.rho0, 10)}")
print(f"  |rho0| = {upper.bound:.8f}, residual {upper.residual:.1e}, "
      f"fixed-point gap {upper.fixed_point_gap:.1e}, |g'-1| {upper.multiplier_error:.1e}")

rep = combine_bounds(-1)
print(f"combined: {rep.best_lower:.6f} <= r_bif(-1) <= {rep.best_upper:.6f}")
for b in rep.lower_bounds + rep.upper_bounds:
    print(f"  {b.provenance:<20} {b.value:.8f}")
