"""Exponential tail of the escape time at B(0, 0.5)."""
import numpy as np

from qbif import DiskLaw, tail_fit

fit = tail_fit(DiskLaw(0, 0.5), 20_000, 10_000)
print(f"window {fit.window}, {fit.tail_samples} samples in the tail, {fit.survivors} survivors")
print(f"gamma_hat = {fit.gamma_hat:.4f}, R^2 = {fit.r_squared:.4f}")
ks = np.array(list(fit.histogram))
counts = np.array(list(fit.histogram.values()))
edges = np.unique(np.geomspace(ks.min(), ks.max() + 1, 16).astype(int))
binned, _ = np.histogram(ks, edges, weights=counts)
for a, b, n in zip(edges, edges[1:], binned):
    print(f"[{a:>5}, {b:>5}) {int(n):>6} {'#' * int(60 * n / binned.max())}")
