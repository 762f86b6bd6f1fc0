"""Qualitative verdicts for noise uniform on a square |Re c|, |Im c| <= s.

The square holds the disk of radius s and lies in the disk of radius
s*sqrt(2), so bounds at c = 0 transfer to it.
"""
from qbif.bif_bounds import combine_bounds, containment_transfer, square_support_disks

known = {0j: combine_bounds(0)}
for s in (0.1, 0.17, 0.1767, 0.1768, 0.2, 0.25, 0.2501, 0.3):
    inner, outer = square_support_disks(s)
    print(f"s = {s:<7} {containment_transfer(inner, outer, known).verdict}")
