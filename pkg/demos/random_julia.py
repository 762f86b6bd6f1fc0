"""Render a random Julia set and test it for disconnectedness.

Writes julia.ppm and overlay.ppm into the current directory.
"""
from qbif import DiskLaw, StreamSeed, classify_connectedness, realize_sequence
from qbif.render import render_parameter_overlay, render_random_julia

seed = StreamSeed(3)
for r in (0.03, 0.3):
    law = DiskLaw(-1, r)
    verdict = classify_connectedness(realize_sequence(law, seed, 2000), 2000)
    print(f"B(-1, {r}): {verdict.to_dict()}")

img = render_random_julia(DiskLaw(-1, 0.03), seed, (-2, 2, -1.5, 1.5), 240, 180, 200)
img.save("julia.ppm")
render_parameter_overlay(-1, [0.0386, 0.0399], (-1.2, -0.8, -0.15, 0.15), 240, 180).save("overlay.ppm")
print("wrote julia.ppm and overlay.ppm")
