"""
How the Chebyshev degree controls accuracy
==========================================

The fast transform replaces g(tL) by a polynomial in L. The sup error
of the polynomial on [0, lambda_max] bounds the error of each
coefficient, relative to the norm of the signal. The spline joins
in g are not smooth, so the error falls only algebraically with degree.
"""

import numpy as np

from sgwt import (
    build_from_grid_mask,
    compute_coefficients,
    estimate_lambda_max,
    exact_transform,
    forward,
    full_eigendecomposition,
    laplacian,
    make_design,
    prepare,
    sup_error,
)

g = make_design(10.0).kernel
print("degree  sup error of g on [0, 10]")
for M in (5, 10, 20, 40, 80, 160):
    print(f"{M:6d}  {sup_error(compute_coefficients(g, M, 10.0), g):.2e}")

# the same effect on an actual transform, against the dense oracle
L = laplacian(build_from_grid_mask(np.ones((12, 12), bool)))
eig = full_eigendecomposition(L)
design = make_design(estimate_lambda_max(L).lambda_max)
f = np.random.default_rng(1).standard_normal(L.dimension)
exact = exact_transform(eig, design, f)
print("\ndegree  max |fast - exact| / |f|   max bound B_j")
for M in (10, 20, 50, 100):
    pt = prepare(design, L, M)
    dev = np.abs(forward(pt, f).bands - exact).max() / np.linalg.norm(f)
    print(f"{M:6d}  {dev:.2e}                  {max(pt.sup_errors()):.2e}")
