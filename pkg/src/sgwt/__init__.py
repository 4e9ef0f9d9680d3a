"""Spectral graph wavelet transform on weighted graphs."""

from .chebyshev import (
    ChebyshevExpansion,
    apply_many,
    apply_to_vector,
    compute_coefficients,
    eval_scalar,
    square_and_sum,
    sup_error,
)
from .graph import (
    GraphError,
    LaplacianOperator,
    WeightedGraph,
    apply_laplacian,
    build_from_edge_list,
    build_from_grid_mask,
    build_from_point_cloud,
    connected_components,
    hop_distance,
    laplacian,
    swiss_roll_points,
)
from .kernels import (
    KernelSpec,
    ScalingKernelSpec,
    TransformDesign,
    admissibility_constant,
    eval_g,
    eval_h,
    frame_bounds,
    make_design,
    partition_function,
    select_scales,
)
from .spectral import (
    EigenDecomposition,
    SpectrumBound,
    estimate_lambda_max,
    exact_transform,
    exact_wavelet,
    full_eigendecomposition,
    graph_fourier,
    inverse_graph_fourier,
)
from .transform import (
    CGInfo,
    CoefficientSet,
    PreparedTransform,
    adjoint,
    continuous_inverse_check,
    forward,
    frame_operator,
    prepare,
    pseudoinverse,
)

__version__ = "0.1.0"
