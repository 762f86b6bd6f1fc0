"""Scan every 4-tuple of sixth roots of unity at c = -1.

Tuples related by a phase shift or a cyclic rotation give the same bound,
so only one representative per class is computed.  Pass --full to evaluate
all 1296 tuples (about a quarter of an hour on one core).
"""
import sys
import time

from qbif.bif_bounds import scan_discriminant

full = "--full" in sys.argv
t = time.perf_counter()
scan = scan_discriminant(-1, 4, 6, reduce_symmetry=not full)
print(f"{len(scan.certificates)} tuples evaluated in {time.perf_counter() - t:.0f}s")
print(f"minimum |rho0| = {scan.best.bound:.8f} at {scan.best.tuple}")

minimizers = scan.minimizers(1e-6)
print(f"{len(minimizers)} raw tuples attain it:")
for m in minimizers:
    print("  ", m)

print("ten smallest class bounds:")
for tup, bound, rep in sorted(scan.table, key=lambda row: row[1])[:10]:
    print(f"  {tup}  {bound:.8f}")
