"""
Wavelets on a Swiss roll
========================

500 points sampled on a rolled-up sheet, joined by Gaussian weights.
Vertices that are close in space but on different turns of the roll
are only weakly linked, so wavelets centred on one turn stay on it.
Small scales give wavelets concentrated near the centre vertex.
"""

import numpy as np

from sgwt import (
    build_from_point_cloud,
    estimate_lambda_max,
    exact_wavelet,
    full_eigendecomposition,
    hop_distance,
    laplacian,
    make_design,
    swiss_roll_points,
)

rng = np.random.default_rng(0)
points = swiss_roll_points(500, rng)
g = build_from_point_cloud(points, sigma=0.1, threshold=1e-4)
L = laplacian(g)
print(f"{g.num_vertices} vertices, {g.num_edges} edges")

bound = estimate_lambda_max(L)
eig = full_eigendecomposition(L)
print(f"lambda_max estimate {bound.lambda_max:.4f}, true {eig.eigenvalues[-1]:.4f}")

design = make_design(bound.lambda_max, J=4, K=20)
centre = int(np.argmin(np.linalg.norm(points - points.mean(axis=0), axis=1)))
hops = hop_distance(g, centre)

# share of each wavelet's energy within one hop of its centre
print("\n scale      energy within 1 hop")
for t in design.scales:
    psi = exact_wavelet(eig, design, t, centre)
    near = np.sum(psi[hops <= 1] ** 2) / np.sum(psi**2)
    print(f"{t:8.3f}    {near:.3f}")
