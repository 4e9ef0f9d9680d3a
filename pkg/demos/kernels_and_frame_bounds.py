"""
Wavelet kernel, scales and the partition function
=================================================

The wavelet kernel g is a band-pass function: it rises like x**2 near
zero, is joined by a cubic spline on [1, 2], and decays like x**-2
afterwards. The scaling kernel h fills in the low frequencies the
wavelets cannot reach. Summing their squares over the chosen scales
gives G, whose extrema are the frame bounds.
"""

import numpy as np

from sgwt import KernelSpec, frame_bounds, make_design, partition_function

g = KernelSpec()
x = np.array([0.0, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0])
print("g(x):", np.round(g(x), 4))

# g peaks inside the spline segment; h is scaled to match that peak
print(f"max g = {g.maximum:.4f}")

# five scales for a spectrum in [0, 10], with lambda_min = 10 / 20
design = make_design(10.0, J=5, K=20)
print("scales:", np.round(design.scales, 4))

lam = np.linspace(0.0, 10.0, 11)
print("\n  lambda        h " + "".join(f"   g(t{j} x)" for j in range(1, 6)) + "        G")
for row in zip(lam, *[k(lam) for k in design.band_kernels()], partition_function(design, lam)):
    print("".join(f"{v:9.4f}" for v in row))

A, B = frame_bounds(design)
print(f"\nframe bounds on a 10,000-point grid: A = {A:.4f}, B = {B:.4f}, B/A = {B / A:.2f}")
